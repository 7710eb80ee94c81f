#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cwcmatch {

/// Exit statuses of the command line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidInput = 1,
    kExitVerificationFailed = 2,
    kExitCapOrTimeout = 3,
};

/// Runs the tool on `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwcmatch
