#pragma once

// Experiment configuration: JSON in, validated structs out, and the fully
// resolved JSON written back next to the results so a run can be repeated
// from its sidecar alone.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gmeef/experiments/aec.hpp"
#include "gmeef/experiments/classify.hpp"
#include "gmeef/experiments/prediction.hpp"
#include "gmeef/experiments/sysid.hpp"

namespace gmeef {

enum class ExperimentKind { sysid, aec, mg, classify, sweep };

std::string_view experiment_name(ExperimentKind k) noexcept;

struct ExperimentInfo {
  ExperimentKind kind;
  std::string_view summary;
  std::string_view section;
  std::string_view required;
};

/// Catalogue of every experiment kind.
const std::vector<ExperimentInfo>& experiment_catalogue();

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::sysid;
  std::string name;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string output = "results";

  exp::SysidConfig sysid;            // sysid and sweep
  std::vector<double> epsilons;      // sweep
  exp::AecConfig aec;
  exp::MgPredictionConfig mg;
  exp::ClassifyConfig classify;

  /// Propagates seed/threads into the per-kind structs.
  void sync();
};

/// Throws ConfigError naming the offending field ("algorithms[1].lambda")
/// and the reason for any unknown key, wrong type or out-of-domain value.
ExperimentConfig parse_config(const nlohmann::ordered_json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
/// The raw document, for callers that patch keys before parse_config.
nlohmann::ordered_json read_config_json(const std::filesystem::path& path);

/// Every field, defaults included. parse_config(to_json(c)) reproduces c.
nlohmann::ordered_json to_json(const ExperimentConfig& c);

}  // namespace gmeef
