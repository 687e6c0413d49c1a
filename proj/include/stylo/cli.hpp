#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stylo::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericalError = 3 };

/// Runs the command line `stylo <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stylo::cli
