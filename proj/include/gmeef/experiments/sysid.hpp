#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gmeef/experiments/common.hpp"
#include "gmeef/experiments/noise.hpp"

namespace gmeef::exp {

struct SysidConfig {
  std::vector<AlgorithmSpec> algorithms;
  NoiseSpec noise;
  std::size_t trials = 50;
  std::size_t iterations = 5000;
  std::vector<double> true_weights;  // empty: seeded unit-norm vector of `order`
  std::size_t order = 16;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  // Matched-rate calibration: noise-free runs, time to reach this MSD.
  double match_threshold_db = -20.0;
  std::size_t calibration_trials = 10;
};

struct SysidResult {
  std::vector<Curve> curves;                // MSD in dB, index 0 = initial weights
  std::vector<double> true_weights;
  std::map<std::string, double> mu_used;    // per algorithm name
  std::map<std::string, double> h_ave;      // QGMEEF only
  std::vector<Curve> code_counts;           // QGMEEF: trial-averaged H per iteration
};

/// Monte-Carlo system identification: x(n) is a white Gaussian tapped-delay
/// regressor, d(n) = w0.x(n) + v(n). Every algorithm sees the same input and
/// noise within a trial. MSD is averaged over trials before the log.
SysidResult run_sysid(const SysidConfig& cfg);

/// Step size for `target` whose noise-free time to reach the threshold
/// equals that of `reference` (bisection on log mu).
double calibrate_matched_mu(const SysidConfig& cfg, const AlgorithmSpec& reference,
                            const AlgorithmSpec& target);

}  // namespace gmeef::exp
