#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace homiso::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kBound = 2, kNumerical = 3, kUsage = 64 };

/// Runs the command line in-process; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homiso::cli
