#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srlnc::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeFailure = 1,
  kUsage = 2,
  kNumericalIntegrity = 3,
  kOracleSize = 4,
};

/// Runs the command line `args` (args[0] is the program name). Tables go to
/// `out` unless --out names a file; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a:b[:step]" (inclusive) or a single integer. Throws UsageError on
/// malformed text, step < 1, or a > b.
std::vector<int> parse_range(const std::string& text);

/// Splits on commas, dropping empty items.
std::vector<std::string> split_list(const std::string& text);

/// %.17g, so every double round-trips.
std::string format_double(double x);

}  // namespace srlnc::cli
