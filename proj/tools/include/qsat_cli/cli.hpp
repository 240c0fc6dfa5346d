#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the qsat command line with args (argv[0] excluded). Writes reports
/// to out and diagnostics to err; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "3", "1..12", or "1,2,5".
std::vector<std::size_t> parse_round_list(const std::string& text);

}  // namespace qsat::cli
