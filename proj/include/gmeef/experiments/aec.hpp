#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gmeef/experiments/common.hpp"
#include "gmeef/experiments/noise.hpp"

namespace gmeef::exp {

struct AecConfig {
  double fs = 8000.0;
  double duration = 8.0;          // seconds
  std::size_t echo_taps = 128;
  double echo_decay = 24.0;       // envelope time constant in taps
  double echo_gain = 0.3;         // L2 norm of the echo path
  std::size_t filter_taps = 128;
  double near_start = 4.0;        // seconds; near_end <= near_start disables double talk
  double near_end = 5.5;
  double near_level = 1.0;        // near-end RMS relative to the far end
  NoiseSpec background{NoiseKind::gaussian, 0.01};
  double dtd_threshold = 0.5;     // double talk when sum d^2 > T sum x^2 over the filter span
  std::size_t dtd_hangover = 240; // samples adaptation stays frozen after a detection
  double chi = 0.999;
  std::uint64_t seed = 1;
  std::vector<AlgorithmSpec> algorithms;

  void validate() const;
};

struct AecSignals {
  std::vector<double> far;    // loudspeaker signal x(n)
  std::vector<double> echo;   // h * x
  std::vector<double> near;   // near-end talk v(n)
  std::vector<double> noise;  // background eta(n)
  std::vector<double> mic;    // d(n) = echo + near + noise
  std::vector<double> echo_path;
  std::vector<char> near_active;  // ground truth double-talk mask
};

AecSignals make_aec_signals(const AecConfig& cfg);

struct AecResult {
  std::vector<Curve> erle;           // dB per sample
  std::vector<Curve> frozen;         // 1 while the detector holds adaptation
  AecSignals signals;
};

/// Adaptive echo canceller per algorithm: e(n) = d(n) - w.x(n); the weights
/// adapt only while the power-ratio detector (with hangover) reports no double
/// talk. ERLE uses the recursive power estimates with forgetting factor chi.
AecResult run_aec(const AecConfig& cfg);

}  // namespace gmeef::exp
