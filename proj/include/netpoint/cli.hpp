#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace netpoint {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInput = 2,       ///< parse or validation failure
  kExitInfeasible = 3,  ///< estimator undefined for the data
};

/// Runs `netpoint <args...>`; args excludes the program name. Results go to
/// `out` (or the --out file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netpoint
