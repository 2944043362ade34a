#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace emoplan::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace emoplan::cli
