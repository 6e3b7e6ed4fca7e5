#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nimfrac::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

/// Runs one command line (without the program name). Reads interactive input
/// from `in`; normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

/// Splits comma- and/or space-separated decimal values. Throws
/// Error(bad_request) on anything that is not a 64-bit nonnegative integer.
std::vector<std::uint64_t> parse_values(const std::vector<std::string>& tokens);

}  // namespace nimfrac::cli
