#include "gmeef/experiments/noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gmeef/error.hpp"

namespace gmeef::exp {

std::string_view noise_name(NoiseKind k) noexcept {
  switch (k) {
    case NoiseKind::none: return "none";
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::sub_gaussian: return "sub_gaussian";
    case NoiseKind::mixed_gaussian: return "mixed_gaussian";
    case NoiseKind::rayleigh: return "rayleigh";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(std::string_view name) {
  for (auto k : {NoiseKind::none, NoiseKind::gaussian, NoiseKind::sub_gaussian,
                 NoiseKind::mixed_gaussian, NoiseKind::rayleigh}) {
    if (noise_name(k) == name) return k;
  }
  throw ConfigError("unknown noise kind '" + std::string(name) +
                    "' (expected none, gaussian, sub_gaussian, mixed_gaussian or rayleigh)");
}

void NoiseSpec::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ParameterError(std::string("noise ") + what + " must be finite and > 0, got " +
                           std::to_string(v));
    }
  };
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw ParameterError("noise scale must be finite and >= 0, got " + std::to_string(scale));
  }
  positive(variance, "variance");
  positive(var_small, "var_small");
  positive(var_large, "var_large");
  positive(rayleigh_sigma, "rayleigh_sigma");
  if (!(mix_prob >= 0.0 && mix_prob <= 1.0)) {
    throw ParameterError("noise mix_prob must lie in [0, 1], got " + std::to_string(mix_prob));
  }
}

double NoiseSpec::analytic_variance() const {
  const double s2 = scale * scale;
  switch (kind) {
    case NoiseKind::none: return 0.0;
    case NoiseKind::gaussian:
    case NoiseKind::sub_gaussian: return s2 * variance;
    case NoiseKind::mixed_gaussian: return s2 * ((1.0 - mix_prob) * var_small + mix_prob * var_large);
    case NoiseKind::rayleigh:
      return s2 * (2.0 - std::numbers::pi / 2.0) * rayleigh_sigma * rayleigh_sigma;
  }
  return 0.0;
}

std::mt19937_64 make_rng(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

NoiseSource::NoiseSource(const NoiseSpec& spec, std::uint64_t seed)
    : NoiseSource(spec, make_rng(seed)) {}

NoiseSource::NoiseSource(const NoiseSpec& spec, std::mt19937_64 rng)
    : spec_(spec), rng_(std::move(rng)) {
  spec_.validate();
}

double NoiseSource::operator()() {
  double v = 0.0;
  switch (spec_.kind) {
    case NoiseKind::none:
      return 0.0;
    case NoiseKind::gaussian:
      v = std::sqrt(spec_.variance) * normal_(rng_);
      break;
    case NoiseKind::sub_gaussian: {
      const double half = std::sqrt(3.0 * spec_.variance);
      v = (2.0 * unit_(rng_) - 1.0) * half;
      break;
    }
    case NoiseKind::mixed_gaussian: {
      const bool wide = unit_(rng_) < spec_.mix_prob;
      v = std::sqrt(wide ? spec_.var_large : spec_.var_small) * normal_(rng_);
      break;
    }
    case NoiseKind::rayleigh: {
      // Inverse CDF; 1 - u keeps the log argument in (0, 1].
      const double s = spec_.rayleigh_sigma;
      v = s * std::sqrt(-2.0 * std::log(1.0 - unit_(rng_))) - s * std::sqrt(std::numbers::pi / 2.0);
      break;
    }
  }
  return spec_.scale * v;
}

std::vector<double> gen_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("gen_noise: count must be positive");
  NoiseSource src(spec, seed);
  std::vector<double> out(n);
  for (double& v : out) v = src();
  return out;
}

}  // namespace gmeef::exp
