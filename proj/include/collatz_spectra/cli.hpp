#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collatz::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // an audit found violations, or an unexpected error
  kUsage = 2,
  kBudget = 3,   // budget exhausted; partial output was written
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collatz::cli
