// commands.hpp — execution of a resolved RunConfig: dispatch to the library,
// one table per run, plus the JSON run manifest.

#pragma once

#include <string>

#include "run_config.hpp"
#include "table.hpp"

namespace qbm::cli {

struct RunOutput {
  Table table;
  nlohmann::json manifest;
};

// Runs the subcommand and assembles table + manifest. Throws UsageError for
// unknown subcommands or bad parameters, ConvergenceError when quadrature
// fails, IoError never (no output written here).
RunOutput execute(const RunConfig& config);

// Writes the table (and, when out_path is set, the sidecar manifest
// <out_path>.manifest.json). Empty out_path prints the table to stdout.
void write_outputs(const RunOutput& output, const RunConfig& config);

// Reads a manifest written by write_outputs and re-executes its config.
RunConfig config_from_manifest_file(const std::string& path);

}  // namespace qbm::cli
