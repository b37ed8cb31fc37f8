#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace commfind::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kIo = 3,
  kInvalidParams = 4,
  kBudget = 5,
  kInfeasible = 6,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace commfind::cli
