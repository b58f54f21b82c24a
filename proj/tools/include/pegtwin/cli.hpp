#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pegtwin::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoError = 2,
  kScoreUnachievable = 3,
  kInvalidMoveFile = 4,
};

// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pegtwin::cli
