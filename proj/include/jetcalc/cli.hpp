#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jetcalc::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation; args[0] is the program name.  Returns 0 when every
/// check passes, 1 on a failed check or refutation, 2 on usage or input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace jetcalc::cli
