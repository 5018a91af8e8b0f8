#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace histories::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kInconsistent = 3,
  kFrameworkRule = 4,
  kNullCondition = 5,
};

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace histories::cli
