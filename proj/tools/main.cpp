#include <iostream>

#include "densat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return densat::run_cli(args, std::cout, std::cerr);
}
