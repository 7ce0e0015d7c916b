#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2,2" -> one shape; "2;3;2,2" -> three shapes.
std::vector<std::vector<int>> parse_dims(const std::string& text);

}  // namespace qim::cli
