#pragma once

#include <iosfwd>

namespace sbon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `sbon` command-line tool. Commands: speckle, despeckle, metrics,
// pipeline-dump. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sbon::cli
