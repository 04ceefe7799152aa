#pragma once

#include <istream>
#include <string>
#include <vector>

namespace tinopt::cli {

struct CommandResult {
  int exit_code = 0;     // 0 ok, 1 validation/domain error, 2 usage error, 3 oracle disagreement
  std::string output;    // document written to stdout
  std::string errors;    // human-readable diagnostics for stderr
};

/// Runs `tin-opt <args...>`; args exclude the program name. File arguments
/// equal to "-" read from `input`.
CommandResult run(const std::vector<std::string>& args, std::istream& input);

}  // namespace tinopt::cli
