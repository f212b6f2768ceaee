#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modrep::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kVerdictFail = 1,
  kUsage = 2,
  kContract = 3,
};

// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modrep::cli
