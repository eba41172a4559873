#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace kpart::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics and failure details to `err`. Returns 0 when every
/// check passes, 1 when a verdict failed and 2 on usage or budget errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kpart::cli
