#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdroots::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kBadArguments = 2, kFileError = 3 };

// Runs the command line `args` (without the program name). Normal output goes to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdroots::cli
