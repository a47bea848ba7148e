#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hyperlift::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Returns 0 on success
/// or a true verdict, 1 on a false verdict and 2 on usage, input or parse
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlift::cli
