#pragma once

// Linear adaptive filters y = w.x trained by gradient ascent on windowed
// information potentials (GMEEF, its quantized variant, and the GMCC / GMEE
// limits), plus the LMS and LMF baselines.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gmeef/criterion.hpp"
#include "gmeef/quantizer.hpp"

namespace gmeef {

struct RegressionSample {
  std::span<const double> input;
  double desired = 0.0;
};

enum class FilterAlgorithm { lms, lmf, gmcc, gmee, gmeef, qgmeef };

std::string_view algorithm_name(FilterAlgorithm a) noexcept;
/// Throws ConfigError for an unknown name.
FilterAlgorithm parse_filter_algorithm(std::string_view name);

// "paper" rescales each term of the gradient by beta^alpha / alpha so the
// step size has the scale of the published update rule; "exact" steps along
// the true gradient of the potential.
enum class StepConvention { paper, exact };

// How the quantized entropy term weights a code: by its members inside the
// current window, or by its lifetime count over the whole stream.
enum class CountMode { window, global };

struct FilterConfig {
  FilterAlgorithm algorithm = FilterAlgorithm::gmeef;
  std::size_t order = 16;
  double mu = 0.1;
  std::size_t window = 50;  // forced to 1 for LMS / LMF
  FiducialMix mix{0.8, GgdParams(2.0, 10.0), GgdParams(1.0, 20.0)};
  StepConvention convention = StepConvention::paper;
  double epsilon = 0.02;  // QGMEEF only
  CountMode count_mode = CountMode::window;
};

class FilterState {
 public:
  /// Zero initial weights. Throws ParameterError for order 0, mu <= 0 or
  /// window 0.
  explicit FilterState(const FilterConfig& cfg);
  /// Explicit initial weights; size must equal cfg.order.
  FilterState(const FilterConfig& cfg, std::span<const double> initial_weights);

  const FilterConfig& config() const noexcept { return cfg_; }
  FilterAlgorithm algorithm() const noexcept { return cfg_.algorithm; }
  std::span<const double> weights() const noexcept { return w_; }
  std::span<double> weights() noexcept { return w_; }
  std::size_t order() const noexcept { return w_.size(); }
  double mu() const noexcept { return cfg_.mu; }

  const ErrorWindow& errors() const noexcept { return errors_; }
  /// Window regressors, row-major, oldest first (errors().size() rows).
  std::span<const double> inputs() const noexcept { return inputs_; }

  /// Updates performed so far.
  std::size_t iteration() const noexcept { return iteration_; }
  /// Kernel/arith tally of the most recent update.
  const OpCounter& last_ops() const noexcept { return ops_; }
  /// Distinct codes touched by the window at the most recent QGMEEF step.
  std::size_t last_code_count() const noexcept { return last_codes_; }

  /// Per-term multipliers applied to the error gradient.
  double corr_gain() const noexcept { return corr_gain_; }
  double ent_gain() const noexcept { return ent_gain_; }

 private:
  friend double af_error(FilterState&, const RegressionSample&);
  friend void gmeef_step(FilterState&);
  friend void qgmeef_step(FilterState&, Codebook&);
  friend void baseline_step(FilterState&, FilterAlgorithm);
  friend void apply_error_gradient(FilterState&, std::span<const double>);

  FilterConfig cfg_;
  std::vector<double> w_;
  ErrorWindow errors_;
  std::vector<double> inputs_;
  // Per window entry: code index in the stream codebook (-1 = not yet
  // quantized) and whether the entry founded that code.
  std::vector<std::ptrdiff_t> code_of_;
  std::vector<char> founder_;
  std::size_t iteration_ = 0;
  std::size_t last_codes_ = 0;
  OpCounter ops_;
  double corr_gain_ = 1.0;
  double ent_gain_ = 1.0;
};

/// e = d - w.x; pushes (e, x) into the sliding windows and returns e.
/// Throws ShapeError on a dimension mismatch.
double af_error(FilterState& state, const RegressionSample& s);

/// w += mu * (gradient of the windowed GMEEF potential over w), using the
/// stored window errors. Throws NumericFailure on a non-finite gradient.
void gmeef_step(FilterState& state);

/// Quantizes window entries pushed since the previous call, then steps on
/// lambda * GMCC + (1 - lambda) * QGMEE. Each code is the error of the
/// sample that founded it; when the founder is still in the window the code
/// moves with that error, so epsilon = 0 reproduces gmeef_step exactly.
void qgmeef_step(FilterState& state, Codebook& book);

/// LMS: w += mu e x. LMF: w += mu e^3 x (newest sample). GMCC / GMEE: the
/// lambda = 1 / lambda = 0 limits of gmeef_step.
void baseline_step(FilterState& state, FilterAlgorithm kind);

/// One update using the state's own algorithm. `book` is required for
/// QGMEEF and ignored otherwise.
void filter_step(FilterState& state, Codebook* book = nullptr);

/// Gradient ascent with an externally computed error-gradient g (dJ/de_i
/// over the window): w -= mu * sum_i g_i x_i.
void apply_error_gradient(FilterState& state, std::span<const double> grad);

}  // namespace gmeef
