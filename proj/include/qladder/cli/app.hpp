#pragma once

#include <iosfwd>

namespace qladder::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsage = 2,
  kSolverFailure = 3,
  kDegenerate = 4,
};

/// Entry point of the `qladder` tool: subcommands spectrum, dynamics,
/// limits, compare, validate.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qladder::cli
