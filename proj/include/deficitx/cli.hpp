#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deficitx {

/// Exit codes shared by every subcommand: 0 success, 1 usage/parse error,
/// 2 invalid state.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalidState = 2;

/// Entry point behind the deficitx binary; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deficitx
