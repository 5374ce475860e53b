#pragma once

// Runs one named computation from a RunConfig. Shared by the command-line
// tool and the Python module.

#include <string>
#include <vector>

#include "qpavg/io.hpp"

namespace qpavg {

const std::vector<std::string>& command_names();

/// Fills unset fields with per-system defaults (initial condition, F, mu, H,
/// step, tolerance, N, burn-in) and validates the rest. The result is what
/// gets embedded in output files.
RunConfig resolve_defaults(RunConfig cfg);

/// Executes cfg.command on a resolved config. Throws ConfigError or a
/// NumericalError subclass.
ResultTable run_command(const RunConfig& cfg);

/// Column documentation per subcommand, for --help.
std::string command_columns(const std::string& command);

}  // namespace qpavg
