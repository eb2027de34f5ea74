#include "gmeef/experiments/aec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmeef/error.hpp"
#include "gmeef/experiments/metrics.hpp"
#include "gmeef/experiments/signals.hpp"

namespace gmeef::exp {

void AecConfig::validate() const {
  if (!(fs > 0.0) || !(duration > 0.0)) throw ConfigError("aec: fs and duration must be > 0");
  if (echo_taps == 0 || filter_taps == 0) throw ConfigError("aec: tap counts must be positive");
  if (!(echo_decay > 0.0) || !(echo_gain > 0.0)) throw ConfigError("aec: echo_decay and echo_gain must be > 0");
  if (!(near_level >= 0.0)) throw ConfigError("aec: near_level must be >= 0");
  if (!(dtd_threshold > 0.0)) throw ConfigError("aec: dtd_threshold must be > 0");
  if (!(chi > 0.0 && chi < 1.0)) {
    throw ConfigError("aec: chi must lie in (0, 1), got " + std::to_string(chi));
  }
  background.validate();
}

AecSignals make_aec_signals(const AecConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.duration * cfg.fs);
  AecSignals s;
  s.far = speech_like(n, cfg.fs, cfg.seed);
  s.echo_path = decaying_echo_path(cfg.echo_taps, cfg.echo_decay, cfg.echo_gain, cfg.seed);
  s.echo.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const std::size_t kmax = std::min(cfg.echo_taps, i + 1);
    for (std::size_t k = 0; k < kmax; ++k) acc += s.echo_path[k] * s.far[i - k];
    s.echo[i] = acc;
  }

  s.near.assign(n, 0.0);
  s.near_active.assign(n, 0);
  const auto a = static_cast<std::size_t>(std::max(0.0, cfg.near_start) * cfg.fs);
  const auto b = std::min(n, static_cast<std::size_t>(std::max(0.0, cfg.near_end) * cfg.fs));
  if (b > a && cfg.near_level > 0.0) {
    const auto talk = speech_like(b - a, cfg.fs, cfg.seed + 0x9E3779B97F4A7C15ULL);
    for (std::size_t i = a; i < b; ++i) {
      s.near[i] = cfg.near_level * talk[i - a];
      s.near_active[i] = 1;
    }
  }

  NoiseSource bg(cfg.background, make_rng(cfg.seed, 0xBAC6));
  s.noise.resize(n);
  s.mic.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.noise[i] = bg();
    s.mic[i] = s.echo[i] + s.near[i] + s.noise[i];
  }
  return s;
}

AecResult run_aec(const AecConfig& cfg) {
  if (cfg.algorithms.empty()) throw ConfigError("aec: no algorithms configured");
  AecResult res;
  res.signals = make_aec_signals(cfg);
  const auto& sig = res.signals;
  const std::size_t n = sig.far.size();
  const std::size_t m = cfg.filter_taps;

  // Power-ratio detector over the filter span, shared by every algorithm:
  // double talk when sum d^2 > T sum x^2 over the last m samples.
  std::vector<char> frozen(n, 0);
  {
    double px = 0.0;
    double pd = 0.0;
    std::size_t hold = 0;
    for (std::size_t i = 0; i < n; ++i) {
      px += sig.far[i] * sig.far[i];
      pd += sig.mic[i] * sig.mic[i];
      if (i >= m) {
        px -= sig.far[i - m] * sig.far[i - m];
        pd -= sig.mic[i - m] * sig.mic[i - m];
      }
      if (pd > cfg.dtd_threshold * std::max(px, 0.0)) hold = cfg.dtd_hangover + 1;
      if (hold > 0) {
        frozen[i] = 1;
        --hold;
      }
    }
  }

  std::vector<double> reg(m, 0.0);
  for (const auto& spec : cfg.algorithms) {
    FilterState st(spec.filter(m));
    Codebook book(spec.epsilon);
    ErleEstimator erle(cfg.chi);
    Curve curve{spec.name, {}, std::nullopt};
    Curve hold{spec.name, {}, std::nullopt};
    curve.values.reserve(n);
    std::fill(reg.begin(), reg.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::copy_backward(reg.begin(), reg.end() - 1, reg.end());
      reg[0] = sig.far[i];
      double e = 0.0;
      if (frozen[i]) {
        e = sig.mic[i] - simd::dot(st.weights(), reg);
      } else {
        e = af_error(st, {reg, sig.mic[i]});
        try {
          filter_step(st, &book);
        } catch (const NumericFailure&) {
          curve.diverged_at = i + 1;
          break;
        }
      }
      curve.values.push_back(erle.update(sig.mic[i], e));
      hold.values.push_back(frozen[i] ? 1.0 : 0.0);
    }
    res.erle.push_back(std::move(curve));
    res.frozen.push_back(std::move(hold));
  }
  return res;
}

}  // namespace gmeef::exp
