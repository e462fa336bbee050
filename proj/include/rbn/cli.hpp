#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbn::cli {

// Exit statuses of the command-line driver.
enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputError = 2,
  kSizeRefusal = 3,
};

// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbn::cli
