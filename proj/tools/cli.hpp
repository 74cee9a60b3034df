#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bes::cli {

inline constexpr const char* tool_version = "0.1.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_failed = 1,  ///< "not free" from check, a failed audit or reproduction
    exit_usage = 2,   ///< bad flags, unreadable or malformed input
};

/// Runs one command line (without the program name). Everything the command
/// prints goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// SHA-256 of a byte string, lowercase hex.
[[nodiscard]] std::string sha256_hex(const std::string& bytes);

} // namespace bes::cli
