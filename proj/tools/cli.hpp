#pragma once

#include <ostream>

namespace rainbow::cli {

enum Exit : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kBudget = 3 };

/// Parses argv and runs one subcommand. Never throws; the return value is the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rainbow::cli
