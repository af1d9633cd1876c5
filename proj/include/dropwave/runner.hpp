// Command execution: runs one analysis described by a RunConfig and writes
// its artifacts (CSV/JSON, full double precision, config hash embedded).

#pragma once

#include <iosfwd>
#include <string>

#include "dropwave/config.hpp"

namespace dropwave {

// commands: simulate | resonances | branch | stability | selftest.
// Returns the process exit status (0 on success). Progress goes to `log`.
// The output directory comes from the config unless overridden (CLI flag or
// the DROPWAVE_OUT environment variable, resolved by the caller).
int run_command(const std::string& command, const RunConfig& config, std::ostream& log,
                const std::string& out_dir_override = {});

}  // namespace dropwave
