#include "gmeef/kernel_recursive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "gmeef/error.hpp"
#include "gmeef/format.hpp"

namespace gmeef {
namespace {

constexpr double kExponentFloor = 1e-8;
constexpr double kPsiFloor = 1e-12;
constexpr double kSchurTolerance = 1e-10;

void validate(const KernelConfig& cfg) {
  if (!(cfg.zeta1 > 0.0) || !std::isfinite(cfg.zeta1)) {
    throw ParameterError("zeta1 must be finite and > 0, got " + std::to_string(cfg.zeta1));
  }
  if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma)) {
    throw ParameterError("kernel width sigma must be finite and > 0, got " +
                         std::to_string(cfg.sigma));
  }
}

// |v|^(alpha - 2) with |v| floored so alpha < 2 stays finite.
double weight_power(double v, double alpha) {
  const double a = std::abs(v) > kExponentFloor ? std::abs(v) : kExponentFloor;
  return std::pow(a, alpha - 2.0);
}

}  // namespace

double mercer_kernel(std::span<const double> x, std::span<const double> y, double sigma) {
  if (x.size() != y.size()) {
    throw ShapeError("kernel inputs differ in dimension (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  if (!(sigma > 0.0)) throw ParameterError("kernel width sigma must be > 0");
  return std::exp(-simd::squared_distance(x, y) / (2.0 * sigma * sigma));
}

double kr_psi(double e_new, std::span<const double> previous_errors, const FiducialMix& mix) {
  const double lambda = mix.lambda();
  const GgdParams& p1 = mix.corr();
  const GgdParams& p2 = mix.ent();
  const double n = static_cast<double>(previous_errors.size() + 1);
  double psi = 0.0;
  if (lambda != 0.0) {
    psi += lambda * p1.chain_constant() / n * ggd_eval(e_new, p1) * weight_power(e_new, p1.alpha());
  }
  if (lambda != 1.0) {
    const double c = 2.0 * (1.0 - lambda) * p2.chain_constant() / (n * n);
    for (double ek : previous_errors) {
      const double d = e_new - ek;
      psi += c * ggd_eval(d, p2) * weight_power(d, p2.alpha());
    }
  }
  return psi > kPsiFloor ? psi : kPsiFloor;
}

KernelModel kr_init(const RegressionSample& first, const KernelConfig& cfg) {
  validate(cfg);
  if (first.input.empty()) throw ShapeError("kernel model input must be nonempty");
  const FiducialMix& mix = cfg.mix;
  const double reg = cfg.zeta1 * (mix.lambda() * mix.corr().chain_constant() +
                                  2.0 * (1.0 - mix.lambda()) * mix.ent().chain_constant());
  const double denom = 1.0 + reg;  // k(x, x) = 1
  if (!(std::abs(denom) > std::numeric_limits<double>::epsilon()) || !std::isfinite(denom)) {
    throw ParameterError("degenerate kernel model initialization");
  }
  KernelModel m;
  m.cfg_ = cfg;
  m.dim_ = first.input.size();
  m.centers_.assign(first.input.begin(), first.input.end());
  const double c1 = 1.0 / denom;
  m.c_ = {c1};
  m.gamma_ = {c1 * first.desired};
  m.errors_ = {first.desired};
  m.reg_ = {reg};
  return m;
}

double kr_predict(const KernelModel& model, std::span<const double> x) {
  if (x.size() != model.dim()) {
    throw ShapeError("query has " + std::to_string(x.size()) + " entries for a model of dimension " +
                     std::to_string(model.dim()));
  }
  double y = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    y += model.gamma()[i] * mercer_kernel(x, model.center(i), model.config().sigma);
  }
  return y;
}

double kr_update(KernelModel& model, const RegressionSample& s) {
  const std::size_t n = model.size();
  if (n == 0) throw EmptyInputError("kernel model is not initialized");
  if (s.input.size() != model.dim()) {
    throw ShapeError("sample has " + std::to_string(s.input.size()) +
                     " entries for a model of dimension " + std::to_string(model.dim()));
  }
  const double sigma = model.cfg_.sigma;

  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = mercer_kernel(s.input, model.center(i), sigma);
  std::vector<double> z(n);
  simd::gemv(model.c_.data(), n, n, n, h, z);
  const double e = s.desired - simd::dot(h, model.gamma_);

  const double psi = kr_psi(e, model.errors_, model.cfg_.mix);
  const double reg = model.cfg_.zeta1 / psi;
  const double kxx = 1.0;
  const double r = kxx + reg - simd::dot(z, h);
  if (!std::isfinite(r) || std::abs(r) < kSchurTolerance * (1.0 + kxx)) {
    throw IllConditionedUpdate("kernel update rejected: Schur complement r = " + std::to_string(r), r);
  }

  // C_L = [[C + z z^T / r, -z / r], [-z^T / r, 1 / r]]
  const std::size_t m = n + 1;
  std::vector<double> c(m * m);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(model.c_.begin() + static_cast<std::ptrdiff_t>(i * n),
              model.c_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n),
              c.begin() + static_cast<std::ptrdiff_t>(i * m));
  }
  simd::rank1_update(c.data(), m, 1.0 / r, z, z);
  for (std::size_t i = 0; i < n; ++i) {
    c[i * m + n] = -z[i] / r;
    c[n * m + i] = -z[i] / r;
  }
  c[n * m + n] = 1.0 / r;

  const double step = e / r;
  for (std::size_t i = 0; i < n; ++i) model.gamma_[i] -= z[i] * step;
  model.gamma_.push_back(step);
  model.c_ = std::move(c);
  model.centers_.insert(model.centers_.end(), s.input.begin(), s.input.end());
  model.errors_.push_back(e);
  model.reg_.push_back(reg);
  return e;
}

void write_kernel_csv(std::ostream& out, const KernelModel& model) {
  out << "index,gamma";
  for (std::size_t k = 0; k < model.dim(); ++k) out << ",x" << k;
  out << '\n';
  for (std::size_t i = 0; i < model.size(); ++i) {
    out << i << ',' << format_number(model.gamma()[i]);
    for (double v : model.center(i)) out << ',' << format_number(v);
    out << '\n';
  }
}

}  // namespace gmeef
