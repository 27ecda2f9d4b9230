#pragma once

namespace xsblab {

// Full command-line entry point: parses argv, loads and validates the
// config, runs the requested subcommand, and writes every output file
// followed by the manifest (always last, atomically).  Returns the process
// exit code: 0 success, 2 configuration or validation error, 3 hard
// assertion or numeric failure, 4 blow-up during evolution.
//
//   xsblab <spectrum|evolve|picard|verify> --config <path>
//          [--out <dir>] [--seed <u64>] [--threads <n>]
//
// Output directory precedence: --out, then the XSBLAB_OUT environment
// variable, then output_dir from the config, then ./xsblab-out.
int cli_main(int argc, const char* const* argv);

} // namespace xsblab
