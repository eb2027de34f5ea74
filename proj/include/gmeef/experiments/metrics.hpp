#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gmeef::exp {

constexpr double kDbFloor = -200.0;

/// 10 log10(|w0 - w|^2 / |w0|^2), floored at -200 dB. Throws ShapeError on
/// a size mismatch and ParameterError when |w0| = 0.
double msd_db(std::span<const double> true_w, std::span<const double> est_w);

/// |w0 - w|^2 / |w0|^2 (the quantity averaged over trials before the log).
double normalized_deviation(std::span<const double> true_w, std::span<const double> est_w);

/// 10 log10(x) floored at -200 dB.
double to_db(double power_ratio);

/// Recursive power estimates p <- chi p + (1 - chi) x^2 of the desired and
/// residual signals; ERLE = 10 log10(p_d / p_e). p_e is floored to keep the
/// ratio finite; `floored()` reports whether that happened.
class ErleEstimator {
 public:
  /// Throws ConfigError unless 0 < chi < 1.
  explicit ErleEstimator(double chi = 0.999, double floor = 1e-20);

  double update(double d, double e);
  double chi() const noexcept { return chi_; }
  double desired_power() const noexcept { return pd_; }
  double residual_power() const noexcept { return pe_; }
  bool floored() const noexcept { return floored_; }

 private:
  double chi_;
  double floor_;
  double pd_ = 0.0;
  double pe_ = 0.0;
  bool floored_ = false;
};

/// Trailing moving average; the first w-1 outputs average what is available.
std::vector<double> moving_average(std::span<const double> v, std::size_t w);

/// Mean of the last `fraction` of the values (at least one value).
double tail_mean(std::span<const double> v, double fraction = 0.2);

/// First index with v[i] <= threshold.
std::optional<std::size_t> first_at_or_below(std::span<const double> v, double threshold);

}  // namespace gmeef::exp
