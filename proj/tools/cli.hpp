#pragma once

#include <iosfwd>

namespace bbs::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kStatistical = 4 };

// Parses argv and runs one subcommand. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bbs::cli
