#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gmeef::exp {

struct MgConfig {
  double delay = 17.0;     // tau
  double step = 0.1;       // integration step
  double interval = 1.0;   // sampling interval
  double history = 1.2;    // constant x(t) for t <= 0
  std::size_t length = 2000;
  std::size_t discard = 0;  // samples dropped from the start

  /// Throws ConfigError unless delay, step, interval > 0 and both the delay
  /// and the interval are whole multiples of the step.
  void validate() const;
};

/// dx/dt = 0.2 x(t - tau) / (1 + x(t - tau)^10) - 0.1 x(t), classical RK4
/// on a uniform grid. Delayed values at half steps come from the cubic
/// Hermite interpolant of the stored grid values and derivatives.
std::vector<double> gen_mackey_glass(const MgConfig& cfg);

/// Seeded Gaussian vector scaled to unit norm.
std::vector<double> random_unit_weights(std::size_t n, std::uint64_t seed);

/// Seeded Gaussian taps under an exponential envelope exp(-k / decay),
/// scaled so the path has the requested L2 norm.
std::vector<double> decaying_echo_path(std::size_t taps, double decay, double norm,
                                       std::uint64_t seed);

/// Speech-like signal: white noise through a two-resonance all-pole filter,
/// gated by a syllable-rate envelope with short pauses, normalized to unit
/// power over its active part.
std::vector<double> speech_like(std::size_t n, double fs, std::uint64_t seed);

}  // namespace gmeef::exp
