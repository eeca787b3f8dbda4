#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qes {

inline constexpr const char* kToolVersion = "0.3.0";

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitClaimFailed = 1, kExitUsage = 2 };

/// Runs the tool on `args` (without the program name). Reports go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qes
