#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hilbert::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalid = 2;
inline constexpr int kNumeric = 3;
inline constexpr int kUsage = 64;

/// Runs one command line (args[0] is the program name). The JSON report goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilbert::cli
