#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coamoeba {

enum ExitCode : int { kExitOk = 0, kExitConsistency = 1, kExitInvalid = 2 };

/// Runs the command line `args` (without the program name). Output goes to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace coamoeba
