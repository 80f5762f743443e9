#pragma once

// Command-line front end. Kept in the library so tests can drive it
// in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace buckle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or the --out file), diagnostics to `err`. Returns 0 on success, 1 on an
/// argument error, 2 when some or all results could not be computed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace buckle::cli
