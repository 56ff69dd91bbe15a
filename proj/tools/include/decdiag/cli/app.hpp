#pragma once

#include <ostream>

namespace decdiag::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kInternalError = 3,
};

/// Runs the `decdiag` command line. JSON results go to `out`, diagnostics
/// to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace decdiag::cli
