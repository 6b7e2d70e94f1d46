#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cardioload::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParseError = 2,
    kExitInvalidInput = 3,
    kExitNonContiguous = 4,
    kExitUnknownScenario = 5,
};

/// Runs the command line (args[0] is the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cardioload::cli
