#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pgm::cli {

/// Exit codes: 0 success, 1 failed validation or computation, 2 bad invocation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgm::cli
