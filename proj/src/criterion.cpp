#include "gmeef/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmeef/error.hpp"
#include "gmeef/special.hpp"

namespace gmeef {
namespace {

void require_nonempty(std::span<const double> errs, const char* what) {
  if (errs.empty()) throw EmptyInputError(std::string(what) + ": empty error window");
}

void require_grad_size(std::span<const double> errs, std::span<double> grad, const char* what) {
  if (grad.size() != errs.size()) {
    throw ShapeError(std::string(what) + ": gradient buffer has " + std::to_string(grad.size()) +
                     " entries for " + std::to_string(errs.size()) + " errors");
  }
}

void tally(OpCounter* ops, std::uint64_t kernels, std::uint64_t mults, std::uint64_t adds) {
  if (!ops) return;
  ops->exponentiations += kernels;
  ops->multiplications += mults;
  ops->additions += adds;
}

}  // namespace

GgdParams::GgdParams(double alpha, double beta) : beta_(beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("GGD alpha must be finite and > 0, got " + std::to_string(alpha));
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("GGD beta must be finite and > 0, got " + std::to_string(beta));
  }
  const double norm = alpha / (2.0 * beta * lanczos_gamma(1.0 / alpha));
  if (!std::isfinite(norm) || !(norm > 0.0)) {
    throw ParameterError("GGD normalization is not finite for alpha = " + std::to_string(alpha));
  }
  shape_.alpha = alpha;
  shape_.inv_beta = 1.0 / beta;
  shape_.norm = norm;
  shape_.score_scale = norm * alpha / beta;
  shape_.min_u = 1e-12 / beta;
  shape_.kind = alpha == 1.0   ? simd::GgdShape::Kind::laplacian
                : alpha == 2.0 ? simd::GgdShape::Kind::gaussian
                               : simd::GgdShape::Kind::general;
  chain_ = alpha / std::pow(beta, alpha);
}

FiducialMix::FiducialMix(double lambda, GgdParams corr, GgdParams ent)
    : lambda_(lambda), corr_(corr), ent_(ent) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ParameterError("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

ErrorWindow::ErrorWindow(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ParameterError("error window capacity must be positive");
  samples_.reserve(capacity);
}

void ErrorWindow::push(double e) {
  if (samples_.size() == capacity_) samples_.erase(samples_.begin());
  samples_.push_back(e);
}

double ggd_eval(double e, const GgdParams& p) {
  const double u = std::abs(e / p.beta());
  return p.norm() * std::exp(-std::pow(u, p.alpha()));
}

double ggd_score(double e, const GgdParams& p) {
  if (e == 0.0) {
    if (p.alpha() < 1.0) {
      throw SingularScoreError("GGD score diverges at e = 0 for alpha = " +
                               std::to_string(p.alpha()) + " < 1");
    }
    return 0.0;
  }
  const double sign = e > 0.0 ? 1.0 : -1.0;
  return -p.chain_constant() * ggd_eval(e, p) * std::pow(std::abs(e), p.alpha() - 1.0) * sign;
}

double gmcc_ip(std::span<const double> errs, const GgdParams& p, OpCounter* ops) {
  require_nonempty(errs, "gmcc_ip");
  const double zero = 0.0;
  double s = 0.0;
  for (double e : errs) s += simd::ggd_sum(e, std::span(&zero, 1), {}, p.shape());
  tally(ops, errs.size(), 2 * errs.size(), errs.size());
  return s / static_cast<double>(errs.size());
}

double gmee_ip(std::span<const double> errs, const GgdParams& p, OpCounter* ops) {
  require_nonempty(errs, "gmee_ip");
  double s = 0.0;
  for (double e : errs) s += simd::ggd_sum(e, errs, {}, p.shape());
  const auto n = static_cast<double>(errs.size());
  const std::uint64_t pairs = errs.size() * errs.size();
  tally(ops, pairs, 2 * pairs, 2 * pairs);
  return s / (n * n);
}

double gmeef_ip(std::span<const double> errs, const FiducialMix& mix, OpCounter* ops) {
  const double lambda = mix.lambda();
  return lambda * gmcc_ip(errs, mix.corr(), ops) + (1.0 - lambda) * gmee_ip(errs, mix.ent(), ops);
}

double qgmee_ip(std::span<const double> errs, std::span<const double> codes,
                std::span<const std::size_t> counts, const GgdParams& p, OpCounter* ops) {
  require_nonempty(errs, "qgmee_ip");
  if (codes.size() != counts.size()) {
    throw ShapeError("qgmee_ip: " + std::to_string(codes.size()) + " codes but " +
                     std::to_string(counts.size()) + " counts");
  }
  std::size_t total = 0;
  std::vector<double> weights(counts.size());
  for (std::size_t h = 0; h < counts.size(); ++h) {
    total += counts[h];
    weights[h] = static_cast<double>(counts[h]);
  }
  if (total != errs.size()) {
    throw InconsistencyError("qgmee_ip: codebook counts sum to " + std::to_string(total) +
                             " but the window holds " + std::to_string(errs.size()) + " errors");
  }
  double s = 0.0;
  for (double e : errs) s += simd::ggd_sum(e, codes, weights, p.shape());
  const auto n = static_cast<double>(errs.size());
  const std::uint64_t evals = errs.size() * codes.size();
  tally(ops, evals, 3 * evals, 2 * evals);
  return s / (n * n);
}

void gmcc_error_gradient(std::span<const double> errs, const GgdParams& p, std::span<double> grad,
                         OpCounter* ops) {
  require_nonempty(errs, "gmcc_error_gradient");
  require_grad_size(errs, grad, "gmcc_error_gradient");
  // score(0 - (-e_i)) = score(e_i); the column accumulator collects them.
  std::vector<double> negated(errs.size());
  for (std::size_t i = 0; i < errs.size(); ++i) negated[i] = -errs[i];
  std::fill(grad.begin(), grad.end(), 0.0);
  simd::ggd_score_sum(0.0, negated, {}, grad, p.shape());
  const double scale = 1.0 / static_cast<double>(errs.size());
  for (double& g : grad) g *= scale;
  tally(ops, errs.size(), 5 * errs.size(), errs.size());
}

void qgmee_error_gradient(std::span<const double> errs, std::span<const double> codes,
                          std::span<const double> weights,
                          std::span<const std::ptrdiff_t> founders, double norm,
                          const GgdParams& p, std::span<double> grad, OpCounter* ops) {
  require_nonempty(errs, "qgmee_error_gradient");
  require_grad_size(errs, grad, "qgmee_error_gradient");
  if ((!weights.empty() && weights.size() != codes.size()) ||
      (!founders.empty() && founders.size() != codes.size())) {
    throw ShapeError("qgmee_error_gradient: codes, weights and founders differ in length");
  }
  bool any_founder = false;
  for (std::ptrdiff_t f : founders) {
    if (f >= static_cast<std::ptrdiff_t>(errs.size())) {
      throw InconsistencyError("qgmee_error_gradient: founder index outside the window");
    }
    any_founder = any_founder || f >= 0;
  }

  std::vector<double> column(any_founder ? codes.size() : 0, 0.0);
  for (std::size_t i = 0; i < errs.size(); ++i) {
    grad[i] = norm * simd::ggd_score_sum(errs[i], codes, weights, column, p.shape());
  }
  if (any_founder) {
    for (std::size_t h = 0; h < codes.size(); ++h) {
      if (founders[h] >= 0) grad[static_cast<std::size_t>(founders[h])] -= norm * column[h];
    }
  }
  const std::uint64_t evals = errs.size() * codes.size();
  tally(ops, evals, 6 * evals, 3 * evals);
}

void gmee_error_gradient(std::span<const double> errs, const GgdParams& p, std::span<double> grad,
                         OpCounter* ops) {
  require_nonempty(errs, "gmee_error_gradient");
  std::vector<std::ptrdiff_t> self(errs.size());
  for (std::size_t i = 0; i < errs.size(); ++i) self[i] = static_cast<std::ptrdiff_t>(i);
  const auto n = static_cast<double>(errs.size());
  qgmee_error_gradient(errs, errs, {}, self, 1.0 / (n * n), p, grad, ops);
}

void gmeef_error_gradient(std::span<const double> errs, const FiducialMix& mix,
                          std::span<double> grad, OpCounter* ops, double corr_gain,
                          double ent_gain) {
  require_nonempty(errs, "gmeef_error_gradient");
  require_grad_size(errs, grad, "gmeef_error_gradient");
  const double lambda = mix.lambda();
  const double a = lambda * corr_gain;
  const double b = (1.0 - lambda) * ent_gain;
  // A term with zero weight is skipped rather than multiplied by zero so the
  // lambda = 0 / 1 limits cost exactly what the single-term criteria cost.
  if (lambda == 0.0) {
    gmee_error_gradient(errs, mix.ent(), grad, ops);
    for (double& g : grad) g *= b;
    return;
  }
  gmcc_error_gradient(errs, mix.corr(), grad, ops);
  if (lambda == 1.0) {
    for (double& g : grad) g *= a;
    return;
  }
  std::vector<double> ent(errs.size());
  gmee_error_gradient(errs, mix.ent(), ent, ops);
  for (std::size_t i = 0; i < errs.size(); ++i) grad[i] = a * grad[i] + b * ent[i];
}

}  // namespace gmeef
