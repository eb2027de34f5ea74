#pragma once

// Generalized Gaussian kernels and the information potentials built on them:
// correntropy (GMCC), error entropy (GMEE), their fiducial mixture (GMEEF) and
// the codebook-quantized entropy term (QGMEE). All potentials are maximized;
// the error-gradients returned here are exact derivatives of the potentials.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gmeef/simd.hpp"

namespace gmeef {

/// Shape/dispersion pair of a generalized Gaussian density
///   G(e) = alpha / (2 beta Gamma(1/alpha)) * exp(-|e/beta|^alpha).
/// alpha = 1 is the Laplacian, alpha = 2 a Gaussian with sigma = beta/sqrt(2).
class GgdParams {
 public:
  /// Throws ParameterError unless alpha > 0, beta > 0 and the normalization
  /// constant is finite and positive.
  GgdParams(double alpha, double beta);

  double alpha() const noexcept { return shape_.alpha; }
  double beta() const noexcept { return beta_; }
  /// alpha / (2 beta Gamma(1/alpha)), the peak value G(0).
  double norm() const noexcept { return shape_.norm; }
  /// alpha / beta^alpha, the chain-rule constant of d/de exp(-|e/beta|^alpha).
  double chain_constant() const noexcept { return chain_; }
  const simd::GgdShape& shape() const noexcept { return shape_; }

  friend bool operator==(const GgdParams& a, const GgdParams& b) noexcept {
    return a.shape_.alpha == b.shape_.alpha && a.beta_ == b.beta_;
  }

 private:
  double beta_;
  double chain_;
  simd::GgdShape shape_;
};

/// lambda * GMCC(alpha1, beta1) + (1 - lambda) * GMEE(alpha2, beta2).
class FiducialMix {
 public:
  /// Throws ParameterError unless 0 <= lambda <= 1.
  FiducialMix(double lambda, GgdParams corr, GgdParams ent);

  double lambda() const noexcept { return lambda_; }
  const GgdParams& corr() const noexcept { return corr_; }
  const GgdParams& ent() const noexcept { return ent_; }

  /// Supremum of the mixed potential, attained only by the all-zero window.
  double bound() const noexcept {
    return lambda_ * corr_.norm() + (1.0 - lambda_) * ent_.norm();
  }

 private:
  double lambda_;
  GgdParams corr_;
  GgdParams ent_;
};

/// Sliding FIFO of the most recent errors. Once full, push evicts the oldest.
class ErrorWindow {
 public:
  explicit ErrorWindow(std::size_t capacity);

  void push(double e);
  void clear() noexcept { samples_.clear(); }

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  bool full() const noexcept { return samples_.size() == capacity_; }
  /// Oldest first.
  std::span<const double> samples() const noexcept { return samples_; }

 private:
  std::size_t capacity_;
  std::vector<double> samples_;
};

/// Operation tally for one evaluation scope. Only exponentiations follow an
/// exact contract (one per GGD kernel evaluation); multiplications and
/// additions are leading-order bookkeeping.
struct OpCounter {
  std::uint64_t exponentiations = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t additions = 0;

  void reset() noexcept { *this = OpCounter{}; }

  OpCounter& operator+=(const OpCounter& o) noexcept {
    exponentiations += o.exponentiations;
    multiplications += o.multiplications;
    additions += o.additions;
    return *this;
  }
};

double ggd_eval(double e, const GgdParams& p);

/// dG/de = -(alpha/beta^alpha) G(e) |e|^(alpha-1) sign(e). Odd in e.
/// Throws SingularScoreError for alpha < 1 at e = 0; batched gradients below
/// clamp |e| >= 1e-12 instead.
double ggd_score(double e, const GgdParams& p);

/// (1/L) sum_i G(e_i). Throws EmptyInputError on an empty window.
double gmcc_ip(std::span<const double> errs, const GgdParams& p, OpCounter* ops = nullptr);

/// (1/L^2) sum_i sum_j G(e_i - e_j). A single sample gives G(0).
double gmee_ip(std::span<const double> errs, const GgdParams& p, OpCounter* ops = nullptr);

double gmeef_ip(std::span<const double> errs, const FiducialMix& mix, OpCounter* ops = nullptr);

/// (1/L^2) sum_i sum_h counts_h G(e_i - codes_h). Counts must sum to L
/// (InconsistencyError otherwise).
double qgmee_ip(std::span<const double> errs, std::span<const double> codes,
                std::span<const std::size_t> counts, const GgdParams& p,
                OpCounter* ops = nullptr);

inline double gmcc_ip(const ErrorWindow& w, const GgdParams& p, OpCounter* ops = nullptr) {
  return gmcc_ip(w.samples(), p, ops);
}
inline double gmee_ip(const ErrorWindow& w, const GgdParams& p, OpCounter* ops = nullptr) {
  return gmee_ip(w.samples(), p, ops);
}
inline double gmeef_ip(const ErrorWindow& w, const FiducialMix& mix, OpCounter* ops = nullptr) {
  return gmeef_ip(w.samples(), mix, ops);
}

// Error-gradients: grad[i] receives d(potential)/d(e_i). grad.size() must equal
// errs.size().

void gmcc_error_gradient(std::span<const double> errs, const GgdParams& p,
                         std::span<double> grad, OpCounter* ops = nullptr);

void gmee_error_gradient(std::span<const double> errs, const GgdParams& p,
                         std::span<double> grad, OpCounter* ops = nullptr);

/// Gradient of the quantized entropy term with frozen membership. Code h
/// carries weight weights[h]; when founders[h] indexes a window sample the
/// code value is that sample's error and moves with it, otherwise the code is
/// a constant. `norm` replaces the 1/L^2 factor.
void qgmee_error_gradient(std::span<const double> errs, std::span<const double> codes,
                          std::span<const double> weights, std::span<const std::ptrdiff_t> founders,
                          double norm, const GgdParams& p, std::span<double> grad,
                          OpCounter* ops = nullptr);

/// lambda * gmcc gradient + (1 - lambda) * gmee gradient, each term optionally
/// rescaled (gains are 1 for the exact gradient).
void gmeef_error_gradient(std::span<const double> errs, const FiducialMix& mix,
                          std::span<double> grad, OpCounter* ops = nullptr,
                          double corr_gain = 1.0, double ent_gain = 1.0);

}  // namespace gmeef
