#pragma once

#include "elscat/run_config.hpp"

namespace elscat {

// Subcommand bodies. Each validates the parts of the config it needs,
// computes, and writes artifacts plus manifest.json into cfg.out_dir.
// Failures are thrown (invalid_argument / numeric_fault / io_error);
// the CLI entry point maps them to exit codes.
void cmd_solve(const RunConfig& cfg, bool verbose);
void cmd_convergence(const RunConfig& cfg, bool verbose);
void cmd_sinogram(const RunConfig& cfg, bool verbose);
void cmd_amplitude(const RunConfig& cfg, bool verbose);
void cmd_kernel_decay(const RunConfig& cfg, bool verbose);

} // namespace elscat
