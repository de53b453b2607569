#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pathfree::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // budget exceeded, witness found, violation, or nothing certified
  kUsage = 2,    // bad flags, unreadable input, infeasible parameters
  kInternal = 3,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathfree::cli
