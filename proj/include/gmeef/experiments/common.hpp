#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gmeef/adaptive_filter.hpp"
#include "gmeef/kernel_recursive.hpp"
#include "gmeef/mlp.hpp"

namespace gmeef::exp {

// One learner as configured for an experiment. `type` selects the learner
// (a filter algorithm, "krgmeef", or an MLP cost); fields that do not apply
// to the type are ignored.
struct AlgorithmSpec {
  std::string name;
  std::string type = "gmeef";
  double mu = 0.1;
  bool mu_matched = false;  // calibrate mu against `match`
  std::string match;
  std::size_t window = 50;
  double lambda = 0.8;
  double alpha1 = 2.0;
  double beta1 = 10.0;
  double alpha2 = 1.0;
  double beta2 = 20.0;
  double epsilon = 0.02;
  CountMode count_mode = CountMode::window;
  StepConvention convention = StepConvention::paper;
  double zeta1 = 0.1;
  double sigma = 1.0;
  double rate = 0.5;
  TrainMode mode = TrainMode::batch;

  FiducialMix mix() const;
  FilterConfig filter(std::size_t order) const;
  KernelConfig kernel() const;
};

struct Curve {
  std::string name;
  std::vector<double> values;
  std::optional<std::size_t> diverged_at;  // values end before this iteration
};

/// Header "iteration,algorithm,<metric>", then one row per value with nine
/// significant digits, curve by curve. `first_index` labels values[0].
void write_curves_csv(std::ostream& out, const std::string& metric, const std::vector<Curve>& curves,
                      std::size_t first_index = 0);

/// Runs job(0..n-1) on up to `threads` workers and returns the results in
/// index order. Exceptions are rethrown (the lowest failing index wins).
template <class T>
std::vector<T> run_indexed(std::size_t n, std::size_t threads, const std::function<T(std::size_t)>& job);

void run_indexed_void(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& job);

template <class T>
std::vector<T> run_indexed(std::size_t n, std::size_t threads, const std::function<T(std::size_t)>& job) {
  std::vector<std::optional<T>> slots(n);
  run_indexed_void(n, threads, [&](std::size_t i) { slots[i].emplace(job(i)); });
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace gmeef::exp
