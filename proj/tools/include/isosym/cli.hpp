#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isosym::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // non-member, failed check, no weight found
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isosym::cli
