#include "gmeef/experiments/signals.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "gmeef/error.hpp"
#include "gmeef/experiments/noise.hpp"

namespace gmeef::exp {
namespace {

bool whole_multiple(double a, double b) {
  const double q = a / b;
  return std::abs(q - std::round(q)) < 1e-9 * std::max(1.0, q);
}

double mg_rate(double x, double xd) {
  const double p = std::pow(xd, 10.0);
  return 0.2 * xd / (1.0 + p) - 0.1 * x;
}

}  // namespace

void MgConfig::validate() const {
  if (!(delay > 0.0) || !(step > 0.0) || !(interval > 0.0)) {
    throw ConfigError("Mackey-Glass delay, step and interval must be > 0");
  }
  if (!whole_multiple(interval, step)) {
    throw ConfigError("Mackey-Glass sample interval " + std::to_string(interval) +
                      " is not a whole multiple of the step " + std::to_string(step));
  }
  if (!whole_multiple(delay, step) || delay < step) {
    throw ConfigError("Mackey-Glass delay " + std::to_string(delay) +
                      " is not a whole multiple of the step " + std::to_string(step));
  }
  if (length == 0) throw ConfigError("Mackey-Glass length must be positive");
}

std::vector<double> gen_mackey_glass(const MgConfig& cfg) {
  cfg.validate();
  const double h = cfg.step;
  const auto lag = static_cast<std::size_t>(std::llround(cfg.delay / h));
  const auto every = static_cast<std::size_t>(std::llround(cfg.interval / h));
  const std::size_t total = (cfg.length + cfg.discard - 1) * every + 1;

  // Grid index k stores t = (k - lag) h; the first lag + 1 entries hold the
  // constant history (derivative 0).
  std::vector<double> x(lag + total, cfg.history);
  std::vector<double> dx(lag + total, 0.0);
  dx[lag] = mg_rate(x[lag], x[0]);

  for (std::size_t k = lag; k + 1 < lag + total; ++k) {
    const std::size_t d = k - lag;
    const double xd0 = x[d];
    const double xd1 = x[d + 1];
    // At t = 0 the history (flat) and the solution meet with different
    // one-sided slopes; the last history interval uses the flat one.
    const double dr = d + 1 == lag ? 0.0 : dx[d + 1];
    const double xmid = 0.5 * (xd0 + xd1) + h * (dx[d] - dr) / 8.0;
    const double k1 = mg_rate(x[k], xd0);
    const double k2 = mg_rate(x[k] + 0.5 * h * k1, xmid);
    const double k3 = mg_rate(x[k] + 0.5 * h * k2, xmid);
    const double k4 = mg_rate(x[k] + h * k3, xd1);
    x[k + 1] = x[k] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    dx[k + 1] = mg_rate(x[k + 1], x[d + 1]);
  }

  std::vector<double> out;
  out.reserve(cfg.length);
  for (std::size_t s = cfg.discard; s < cfg.discard + cfg.length; ++s) out.push_back(x[lag + s * every]);
  return out;
}

std::vector<double> random_unit_weights(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("weight vector length must be positive");
  auto rng = make_rng(seed, 0x5157);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (double& v : w) {
    v = z(rng);
    s += v * v;
  }
  const double inv = 1.0 / std::sqrt(s);
  for (double& v : w) v *= inv;
  return w;
}

std::vector<double> decaying_echo_path(std::size_t taps, double decay, double norm,
                                       std::uint64_t seed) {
  if (taps == 0 || !(decay > 0.0) || !(norm > 0.0)) {
    throw ParameterError("echo path needs taps > 0, decay > 0 and norm > 0");
  }
  auto rng = make_rng(seed, 0xEC40);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> h(taps);
  double s = 0.0;
  for (std::size_t k = 0; k < taps; ++k) {
    h[k] = z(rng) * std::exp(-static_cast<double>(k) / decay);
    s += h[k] * h[k];
  }
  const double scale = norm / std::sqrt(s);
  for (double& v : h) v *= scale;
  return h;
}

std::vector<double> speech_like(std::size_t n, double fs, std::uint64_t seed) {
  if (n == 0 || !(fs > 0.0)) throw ParameterError("speech_like needs n > 0 and fs > 0");
  auto rng = make_rng(seed, 0x5FEE);
  std::normal_distribution<double> z(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  // Two resonances (about 500 Hz and 1500 Hz at 8 kHz) with moderate
  // bandwidth so the spectrum is colored but not needle-peaked.
  auto pole_pair = [&](double freq, double radius, double& a1, double& a2) {
    a1 = 2.0 * radius * std::cos(2.0 * std::numbers::pi * freq / fs);
    a2 = -radius * radius;
  };
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  pole_pair(500.0, 0.75, a1, a2);
  pole_pair(1500.0, 0.6, b1, b2);

  std::vector<double> s(n);
  double y1 = 0, y2 = 0, v1 = 0, v2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = z(rng) + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    const double v = y + b1 * v1 + b2 * v2;
    v2 = v1;
    v1 = v;
    s[i] = v;
  }

  // Syllables of 120-300 ms separated by 30-120 ms pauses; raised-cosine
  // attack/decay inside each syllable.
  std::vector<double> env(n, 0.0);
  std::size_t pos = 0;
  while (pos < n) {
    const auto syl = static_cast<std::size_t>((0.12 + 0.18 * u(rng)) * fs);
    const auto gap = static_cast<std::size_t>((0.03 + 0.09 * u(rng)) * fs);
    const double level = 0.5 + u(rng);
    for (std::size_t k = 0; k < syl && pos + k < n; ++k) {
      const double ph = static_cast<double>(k) / static_cast<double>(syl);
      env[pos + k] = level * std::sin(std::numbers::pi * ph);
    }
    pos += syl + gap;
  }

  double p = 0.0;
  std::size_t active = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] *= env[i];
    if (env[i] > 0.0) {
      p += s[i] * s[i];
      ++active;
    }
  }
  const double scale = active ? 1.0 / std::sqrt(p / static_cast<double>(active)) : 1.0;
  for (double& v : s) v *= scale;
  return s;
}

}  // namespace gmeef::exp
