#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cartan::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsageOrIo = 1;
inline constexpr int kNoOdac = 2;
inline constexpr int kNoConstruction = 3;
inline constexpr int kVerificationFailed = 4;
inline constexpr int kBudgetExceeded = 5;

// Runs the tool on an argument list (without the program name) and streams.
// Testable entry point; the binary's main() is a thin wrapper around this.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cartan::cli
