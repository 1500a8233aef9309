#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace masw::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;  // e.g. every candidate failed
inline constexpr int kExitUsage = 2;        // bad flags, unreadable or invalid input

/// Runs one command line (without the program name). Regular output goes to
/// `out`, diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace masw::cli
