#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fusionmod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// argv[0] is the program name. Data goes to `out`, diagnostics and human tables
// (when --json is set) to `err`.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace fusionmod::cli
