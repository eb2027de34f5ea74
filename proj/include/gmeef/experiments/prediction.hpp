#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gmeef/experiments/common.hpp"
#include "gmeef/experiments/noise.hpp"
#include "gmeef/experiments/signals.hpp"

namespace gmeef::exp {

struct MgPredictionConfig {
  MgConfig series{17.0, 0.1, 1.0, 1.2, 0, 300};  // length is derived
  std::size_t embedding = 7;
  std::size_t train = 1000;
  std::size_t test = 100;
  std::size_t trials = 1;
  NoiseSpec noise{NoiseKind::mixed_gaussian};
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::vector<AlgorithmSpec> algorithms;

  void validate() const;
};

struct MgPredictionResult {
  // Test MSE after each training sample (index 0 = after the first).
  std::vector<Curve> mse;
  std::vector<std::size_t> rejected;  // kernel updates refused, per algorithm
};

/// One-step-ahead prediction from the previous `embedding` samples. Training
/// targets carry additive noise; inputs and test targets are clean. Each
/// trial draws its own noise realization on the same series.
MgPredictionResult run_mg_prediction(const MgPredictionConfig& cfg);

}  // namespace gmeef::exp
