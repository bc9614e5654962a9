#pragma once

#include <iosfwd>

namespace fracperiodic::cli {

/// Exit codes of `run`.
enum ExitCode : int { success = 0, domain_error = 1, usage_error = 2 };

/// Runs one subcommand. Outputs with `--output -` (the default) go to `out`,
/// summaries and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracperiodic::cli
