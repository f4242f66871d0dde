// Command-line front end. run_cli is separate from main so tests can drive
// it in-process.
#pragma once

#include <iosfwd>

namespace rzeta::cli {

// Exit codes. verify returns kFailureBase + min(failures, 53) when any
// report fails.
inline constexpr int kOk = 0;
inline constexpr int kResource = 2;
inline constexpr int kUnconverged = 3;
inline constexpr int kFailureBase = 10;
inline constexpr int kUsage = 64;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rzeta::cli
