#pragma once

// Command-line front end. Kept out of main() so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace crossdiff::cli {

enum ExitCode : int { ok = 0, usage_error = 1, numerical_failure = 2 };

/// args excludes the program name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crossdiff::cli
