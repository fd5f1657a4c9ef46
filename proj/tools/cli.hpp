#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lowrank::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDomain = 2, kIo = 3 };

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lowrank::cli
