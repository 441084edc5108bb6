#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qk::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qk::cli
