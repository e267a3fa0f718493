#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace versinus::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `versinus` invocation; `args` excludes the program name.
/// Returns 0 on success, 1 on pipeline failure (or oracle mismatch), 2 on
/// bad flags.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace versinus::cli
