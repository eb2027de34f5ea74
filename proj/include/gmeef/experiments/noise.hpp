#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace gmeef::exp {

// `none` is a zero stream, used for noise-free calibration runs.
enum class NoiseKind { none, gaussian, sub_gaussian, mixed_gaussian, rayleigh };

std::string_view noise_name(NoiseKind k) noexcept;
/// Throws ConfigError for an unknown name.
NoiseKind parse_noise_kind(std::string_view name);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::gaussian;
  double scale = 1.0;      // multiplies every draw
  double variance = 1.0;   // gaussian and sub_gaussian
  double mix_prob = 0.05;  // mixed_gaussian: weight of the wide component
  double var_small = 0.01;
  double var_large = 100.0;
  double rayleigh_sigma = 3.0;

  /// Throws ParameterError when a parameter leaves its domain.
  void validate() const;
  /// Analytic variance of one draw (all kinds have zero mean).
  double analytic_variance() const;
};

/// Engine seeded from (base, a, b) through std::seed_seq so trial streams
/// are independent of each other and of the thread that runs them.
std::mt19937_64 make_rng(std::uint64_t base, std::uint64_t a = 0, std::uint64_t b = 0);

class NoiseSource {
 public:
  NoiseSource(const NoiseSpec& spec, std::uint64_t seed);
  NoiseSource(const NoiseSpec& spec, std::mt19937_64 rng);
  double operator()();

 private:
  NoiseSpec spec_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// n draws; gaussian N(0, var), sub_gaussian uniform with that variance,
/// mixed (1-p) N(0, v_small) + p N(0, v_large), rayleigh(sigma) minus its
/// mean sigma sqrt(pi/2).
std::vector<double> gen_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace gmeef::exp
