#pragma once

#include <iosfwd>

namespace concurflow::cli {

// Exit statuses of the command-line front end.
enum ExitCode : int {
  kSuccess = 0,
  kValidationError = 1,
  kCheckFailure = 2,
  kInternalError = 3,
};

// Entry point shared by the executable and the in-process tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace concurflow::cli
