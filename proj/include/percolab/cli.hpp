#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace percolab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_validation = 2,
    exit_budget = 3,
};

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless an output file is requested; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace percolab
