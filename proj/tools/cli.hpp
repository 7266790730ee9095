#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualkosz::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
/// The command ran but its check failed (omv-demo mismatch, stretch != tau).
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitValidationError = 3;
inline constexpr int kExitUsageError = 4;

inline constexpr const char* kResultSchema = "dualkosz-result/1";
inline constexpr const char* kBenchSchema = "dualkosz-bench/1";

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualkosz::cli
