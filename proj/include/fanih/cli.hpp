#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fanih {

/// Exit codes of the command line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInput = 2,
  kExitQuasiConvexityUnknown = 3,
  kExitInternal = 4,
};

/// Runs `fanih <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fanih
