#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dab::cli {

inline constexpr int kExitVerified = 0;
inline constexpr int kExitUnverified = 2;
inline constexpr int kExitInputError = 3;

/// Runs the command line `args` (args[0] is the program name). Returns the
/// process exit code: 0 success, 2 verification failure, 3 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dab::cli
