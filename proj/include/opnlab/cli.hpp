// Command-line front end. Results go to `out`, diagnostics to `err`.
#pragma once

#include <ostream>
#include <span>
#include <string>

namespace opnlab::cli {

enum ExitCode : int {
    kCompleted = 0,
    kViolations = 1,
    kUsage = 2,
    kBudget = 3,
};

/// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace opnlab::cli
