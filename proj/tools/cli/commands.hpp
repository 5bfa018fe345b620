#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace envkit::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kIoError = 1,
    kValidationError = 2,
    kBenchmarkFailed = 3,
};

/// Parses `args` (argv without the program name) and runs the selected
/// subcommand. Results go to `out`; diagnostics go to `err` as a single line
/// and only on failure.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace envkit::cli
