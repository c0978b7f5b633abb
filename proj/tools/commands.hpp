#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hierarchyrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Diagnostics go
/// to `err`, display output to `out`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hierarchyrank::cli
