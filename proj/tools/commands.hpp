#pragma once

#include "run_config.hpp"

#include <iosfwd>

namespace htrmt::cli {

enum ExitCode { exit_ok = 0, exit_error = 1, exit_usage = 2, exit_singular = 3, exit_verify = 4 };

// Runs one subcommand, writing the artifact to out and notes to log.
// Errors propagate as htrmt exceptions; the return value is the exit code.
int run_command(const RunConfig& c, std::ostream& out, std::ostream& log);

} // namespace htrmt::cli
