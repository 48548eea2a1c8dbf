#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace betamedian::cli {

enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kUsage = 2,
    kDomain = 3,
    kConvergence = 4,
};

/// Runs one invocation. `args` excludes the program name. Results go to `out`
/// (or to the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a --d value: the literal "1/3" or a decimal number.
double parse_offset(const std::string& text);

}  // namespace betamedian::cli
