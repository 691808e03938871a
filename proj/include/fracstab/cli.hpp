#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fracstab::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,      // bad flags, missing required flags, inadmissible inputs
  kNumerical = 3,  // numerical failure or I/O failure
  kBoundary = 4,   // classify/roots landed on the stability boundary
};

/// Runs one subcommand. `args` excludes the program name. JSON results go
/// to `out` unless --out is given; diagnostics go to `err`.
///
/// --config PATH reads `key = value` lines (same keys as the long flags,
/// '#' comments, [sections] ignored); flags given on the command line win.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracstab::cli
