#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oversamp {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitVerifyFailed = 2,
  kExitNoInverse = 3,
  kExitRankAmbiguous = 4,
  kExitDegreeCap = 5,
};

/// Runs `oversamp <args...>` (program name excluded) and returns the exit code.
/// Reports go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oversamp
