#include <fstream>
#include <sstream>

#include "densat/cli.hpp"
#include "densat/kdeab.hpp"
#include "densat/oracle.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace densat;
using namespace densat::testing;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("headline invocations") {
  auto a = run({"solve", "--logic", "kde", "--mode", "valid", "[][]p -> []p"});
  CHECK(a.code == 0);
  CHECK(a.out == "VALID\n");
  auto b = run({"solve", "--logic", "kdeab", "--mode", "sat", "~([a][b]p -> [a]p)"});
  CHECK(b.code == 0);
  CHECK(b.out == "UNSAT\n");
  auto c = run({"translate", "--fresh", "p", "[]q"});
  CHECK(c.code == 0);
  CHECK(c.out == "[](p -> q)\n");
}

TEST_CASE("verdicts") {
  CHECK(run({"solve", "--logic", "kde", "--mode", "sat", "<>p & ~p"}).out == "SAT\n");
  CHECK(run({"solve", "--logic", "kde", "--mode", "valid", "[]p -> p"}).out == "INVALID\n");
  CHECK(run({"solve", "--logic", "kdeab", "--mode", "valid", "[a][b]p -> [a]p"}).out == "VALID\n");
  CHECK(run({"solve", "--logic", "kdeab", "--mode", "valid", "[a]p -> [a][b]p"}).out == "INVALID\n");
  CHECK(run({"solve", "--logic", "kdeab", "--bound", "counter", "~[a]p"}).out == "SAT\n");
  CHECK(run({"solve", "--logic", "kdeab", "--no-memo", "~[a]p & [a][b]false"}).out == "UNSAT\n");
  CHECK(run({"translate", "a & []q"}).out == "a & [](a0 -> q)\n");
}

TEST_CASE("oracle subcommand") {
  auto f = run({"oracle", "--class", "weakly-dense", "--max-worlds", "2", "~[a]p"});
  CHECK(f.code == 0);
  CHECK(first_line(f.out) == "FOUND");
  auto m = model_from_json(nlohmann::ordered_json::parse(f.out.substr(f.out.find('\n') + 1)));
  CHECK(is_weakly_dense(m));
  auto n = run({"oracle", "--class", "dense", "--max-worlds", "3", "~([][]p -> []p)"});
  CHECK(n.out == "NONE-WITHIN-BOUND\n");
  CHECK(run({"oracle", "--max-worlds", "9", "p"}).code == 64);
}

TEST_CASE("models and stats") {
  const std::string path = "cli_model_test.json";
  auto a = run({"solve", "--logic", "kdeab", "--stats", "--model", path, "<a>p & [a][b]q"});
  CHECK(first_line(a.out) == "SAT");
  auto stats = nlohmann::json::parse(a.out.substr(a.out.find('\n') + 1));
  CHECK(stats.contains("windows_explored"));
  std::ifstream in(path);
  REQUIRE(in);
  auto m = model_from_json(nlohmann::ordered_json::parse(in));
  CHECK(model_check(m, m.root, bi("<a>p & [a][b]q")));
  CHECK(is_weakly_dense(m));

  auto c = run({"solve", "--logic", "kde", "--mode", "valid", "--model", path, "[]p -> p"});
  CHECK(c.out == "INVALID\n");
  std::ifstream in2(path);
  auto cm = model_from_json(nlohmann::ordered_json::parse(in2));
  CHECK_FALSE(cm.bimodal);
  CHECK_FALSE(model_check(cm, cm.root, uni("[]p -> p")));
  CHECK(is_dense(cm));
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 64);
  CHECK(run({"solve"}).code == 64);
  CHECK(run({"solve", "--logic", "nope", "p"}).code == 64);
  CHECK(run({"bogus"}).code == 64);
  auto p = run({"solve", "--logic", "kde", "p & & q"});
  CHECK(p.code == 65);
  CHECK(p.out.empty());
  CHECK(p.err.find("at 4") != std::string::npos);
  CHECK(run({"solve", "--logic", "kde", "[a]p"}).code == 65);
  CHECK(run({"solve", "--logic", "kdeab", "[]p"}).code == 65);
  CHECK(run({"translate", "--fresh", "q", "[]q"}).code == 64);
  CHECK(run({"solve", "--logic", "kde", "--max-free-bits", "1", "[]p & []q"}).code == 64);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("identical invocations print identical output") {
  std::vector<std::vector<std::string>> calls{
      {"solve", "--logic", "kdeab", "--stats", "~[a]p & <b>(p & [a]~p)"},
      {"solve", "--logic", "kde", "--mode", "sat", "--stats", "<>p & <>~p & [](p -> <>p)"},
      {"oracle", "--class", "all", "--max-worlds", "3", "~([][]p -> []p)"},
      {"corpus", "--logic", "kde", "--max-size", "4"},
  };
  for (const auto& c : calls) CHECK(run(c).out == run(c).out);
}

TEST_CASE("corpus subcommand") {
  auto k = run({"corpus", "--logic", "kde", "--max-size", "5"});
  CHECK(k.code == 0);
  CHECK(first_line(k.out) == "PASS");
  auto j = run({"corpus", "--logic", "kdeab", "--max-size", "4", "--ccs-pairs", "0", "--json"});
  CHECK(j.code == 0);
  CHECK(first_line(j.out) == "PASS");
}
