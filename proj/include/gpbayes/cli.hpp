#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gpbayes/validation.hpp"

namespace gpbayes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (args[0] is the program name). Data goes to
// `out`, diagnostics and usage text to `err`. Returns the process exit
// status: 0 success, 1 domain or tolerance failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Grid file: one "a,b,c,x" point per line; blank lines and lines starting
// with '#' are skipped. Throws UsageError naming the offending line.
std::vector<SweepPoint> parse_grid(std::istream& is);

}  // namespace gpbayes::cli
