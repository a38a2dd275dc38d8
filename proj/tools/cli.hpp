#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfb::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kValidationError = 2,
    kNumericalError = 3,
    kVerificationFailed = 4,
};

/// Runs one command line (args[0] is the program name). Text reports go to
/// `out`, diagnostics to `err`; --out files are written directly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal representation that parses back to the same double.
std::string format_number(double v);

}  // namespace qfb::cli
