#pragma once

// Growing Gaussian-kernel regressor whose ridge term is weighted per center
// by the GMEEF error weights (KRGMEEF). The inverse system matrix C is
// maintained by block (Schur-complement) updates.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "gmeef/adaptive_filter.hpp"
#include "gmeef/criterion.hpp"

namespace gmeef {

struct KernelConfig {
  FiducialMix mix{0.8, GgdParams(2.0, 10.0), GgdParams(1.0, 20.0)};
  double zeta1 = 0.1;  // regularizer
  double sigma = 1.0;  // kernel width
};

/// exp(-|x - y|^2 / (2 sigma^2)). Throws ShapeError / ParameterError.
double mercer_kernel(std::span<const double> x, std::span<const double> y, double sigma);

class KernelModel {
 public:
  const KernelConfig& config() const noexcept { return cfg_; }
  std::size_t size() const noexcept { return gamma_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  /// Row-major, size() rows of dim() values.
  std::span<const double> centers() const noexcept { return centers_; }
  std::span<const double> center(std::size_t i) const { return std::span(centers_).subspan(i * dim_, dim_); }
  std::span<const double> gamma() const noexcept { return gamma_; }
  /// Row-major size() x size() inverse system matrix.
  std::span<const double> c_matrix() const noexcept { return c_; }
  /// A-priori error recorded when each center was admitted (e_1 = d_1).
  std::span<const double> error_history() const noexcept { return errors_; }
  /// Diagonal regularizer of each center, so that C^-1 = K + diag(reg).
  std::span<const double> regularizers() const noexcept { return reg_; }

 private:
  friend KernelModel kr_init(const RegressionSample&, const KernelConfig&);
  friend double kr_update(KernelModel&, const RegressionSample&);

  KernelConfig cfg_;
  std::size_t dim_ = 0;
  std::vector<double> centers_;
  std::vector<double> gamma_;
  std::vector<double> c_;
  std::vector<double> errors_;
  std::vector<double> reg_;
};

/// One-center model: C_1 = 1 / (k(x1,x1) + reg_1), gamma_1 = C_1 d_1 with
/// reg_1 = zeta1 (lambda a1 / b1^a1 + 2 (1 - lambda) a2 / b2^a2).
/// Throws ParameterError for bad zeta1/sigma or a degenerate denominator.
KernelModel kr_init(const RegressionSample& first, const KernelConfig& cfg);

/// sum_i gamma_i k(x, center_i).
double kr_predict(const KernelModel& model, std::span<const double> x);

/// Admits one sample and returns its a-priori error. On IllConditionedUpdate
/// the model is unchanged.
double kr_update(KernelModel& model, const RegressionSample& s);

/// The diagonal weight psi_L of a new center given its error and the errors
/// of the existing centers; L counts the new center.
double kr_psi(double e_new, std::span<const double> previous_errors, const FiducialMix& mix);

/// CSV: index, gamma, x0..x{d-1}.
void write_kernel_csv(std::ostream& out, const KernelModel& model);

}  // namespace gmeef
