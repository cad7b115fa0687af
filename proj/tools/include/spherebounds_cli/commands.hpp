#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spherebounds::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitInvariantViolation = 3;

/// Entry point shared by the executable and the tests. args[0] is the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spherebounds::cli
