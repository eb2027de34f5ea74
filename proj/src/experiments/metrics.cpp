#include "gmeef/experiments/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmeef/error.hpp"

namespace gmeef::exp {

double normalized_deviation(std::span<const double> true_w, std::span<const double> est_w) {
  if (true_w.size() != est_w.size()) {
    throw ShapeError("msd: weight vectors differ in length (" + std::to_string(true_w.size()) +
                     " vs " + std::to_string(est_w.size()) + ")");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < true_w.size(); ++i) {
    const double d = true_w[i] - est_w[i];
    num += d * d;
    den += true_w[i] * true_w[i];
  }
  if (!(den > 0.0)) throw ParameterError("msd: true weight vector has zero norm");
  return num / den;
}

double to_db(double power_ratio) {
  if (!(power_ratio > 0.0)) return kDbFloor;
  return std::max(kDbFloor, 10.0 * std::log10(power_ratio));
}

double msd_db(std::span<const double> true_w, std::span<const double> est_w) {
  return to_db(normalized_deviation(true_w, est_w));
}

ErleEstimator::ErleEstimator(double chi, double floor) : chi_(chi), floor_(floor) {
  if (!(chi > 0.0 && chi < 1.0)) {
    throw ConfigError("ERLE forgetting factor chi must lie in (0, 1), got " + std::to_string(chi));
  }
}

double ErleEstimator::update(double d, double e) {
  pd_ = chi_ * pd_ + (1.0 - chi_) * d * d;
  pe_ = chi_ * pe_ + (1.0 - chi_) * e * e;
  double pe = pe_;
  if (pe < floor_) {
    pe = floor_;
    floored_ = true;
  }
  if (pd_ == 0.0 && pe_ == 0.0) return 0.0;
  return 10.0 * std::log10(std::max(pd_, floor_) / pe);
}

std::vector<double> moving_average(std::span<const double> v, std::size_t w) {
  if (w == 0) throw ParameterError("moving average window must be positive");
  std::vector<double> out(v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += v[i];
    if (i >= w) s -= v[i - w];
    out[i] = s / static_cast<double>(std::min(i + 1, w));
  }
  return out;
}

double tail_mean(std::span<const double> v, double fraction) {
  if (v.empty()) throw EmptyInputError("tail_mean of an empty curve");
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(v.size())));
  double s = 0.0;
  for (std::size_t i = v.size() - n; i < v.size(); ++i) s += v[i];
  return s / static_cast<double>(n);
}

std::optional<std::size_t> first_at_or_below(std::span<const double> v, double threshold) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= threshold) return i;
  }
  return std::nullopt;
}

}  // namespace gmeef::exp
