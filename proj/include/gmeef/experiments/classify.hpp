#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gmeef/dataset.hpp"
#include "gmeef/experiments/common.hpp"

namespace gmeef::exp {

struct ClassifyConfig {
  std::string dataset = "glyphs";  // glyphs, clusters, idx, csv
  std::size_t train = 1000;
  std::size_t test = 200;
  // clusters
  std::size_t classes = 2;
  std::size_t features = 8;
  double spread = 0.5;
  // idx: train images/labels then test images/labels; csv: train then test
  std::vector<std::string> files;
  std::vector<std::size_t> hidden{32};
  std::size_t epochs = 30;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::vector<AlgorithmSpec> algorithms;  // type = cost (ce, gmcc, gmee, gmeef)

  void validate() const;
};

struct ClassifyResult {
  std::vector<Curve> train_accuracy;  // index 0 = untrained
  std::vector<Curve> test_accuracy;
};

/// Loads or synthesizes the train/test split named by the config.
std::pair<Dataset, Dataset> classify_data(const ClassifyConfig& cfg);

/// Trains one MLP per algorithm from the same seeded initialization.
ClassifyResult run_classify(const ClassifyConfig& cfg);

}  // namespace gmeef::exp
