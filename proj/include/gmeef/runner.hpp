#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "gmeef/config.hpp"

namespace gmeef {

struct Divergence {
  std::string algorithm;
  std::size_t iteration;
};

struct RunReport {
  std::vector<std::filesystem::path> files;  // in write order
  std::vector<Divergence> diverged;
};

/// Runs the configured experiment and writes into `out_dir`:
///   <name>.csv            iteration,algorithm,<metric>
///   <name>.json           resolved config (feed it back to rerun)
///   <name>_summary.json   scalar results per algorithm
/// plus <name>_<metric>.csv for secondary curves. Divergence is reported,
/// not thrown; the files are still written.
RunReport run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

/// Name of the metric column of the primary CSV.
std::string primary_metric(ExperimentKind kind);

}  // namespace gmeef
