#pragma once

#include <iosfwd>

namespace spectral_minmax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitVerificationFailed = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitUsage = 64;

// Command-line entry point. Exit code 0 iff every invoked verification passes
// (a report whose hypothesis is not met counts as passing), 2 on invalid
// input, 3 on a failed verification, 64 on unknown flags or bad usage.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace spectral_minmax::cli
