#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace densat {

/// Exit statuses of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 64, kExitParse = 65, kExitInternal = 70 };

/// Runs one invocation; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace densat
