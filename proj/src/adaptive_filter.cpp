#include "gmeef/adaptive_filter.hpp"

#include <cmath>
#include <string>

#include "gmeef/error.hpp"

namespace gmeef {
namespace {

double paper_gain(const GgdParams& p) { return std::pow(p.beta(), p.alpha()) / p.alpha(); }

std::size_t effective_window(const FilterConfig& cfg) {
  return cfg.algorithm == FilterAlgorithm::lms || cfg.algorithm == FilterAlgorithm::lmf
             ? 1
             : cfg.window;
}

void validate(const FilterConfig& cfg) {
  if (cfg.order == 0) throw ParameterError("filter order must be positive");
  if (!(cfg.mu > 0.0) || !std::isfinite(cfg.mu)) {
    throw ParameterError("step size mu must be finite and > 0, got " + std::to_string(cfg.mu));
  }
  if (cfg.window == 0) throw ParameterError("window length must be positive");
  if (!(cfg.epsilon >= 0.0) || !std::isfinite(cfg.epsilon)) {
    throw ParameterError("epsilon must be finite and >= 0, got " + std::to_string(cfg.epsilon));
  }
}

// Shared body of the GMEEF family: exact error-gradient of the mixed
// potential over the stored window, then the weight update.
void step_with_mix(FilterState& state, const FiducialMix& mix, double corr_gain, double ent_gain,
                   OpCounter& ops) {
  const auto errs = state.errors().samples();
  if (errs.empty()) throw EmptyInputError("filter step on an empty window");
  std::vector<double> grad(errs.size());
  gmeef_error_gradient(errs, mix, grad, &ops, corr_gain, ent_gain);
  apply_error_gradient(state, grad);
}

}  // namespace

std::string_view algorithm_name(FilterAlgorithm a) noexcept {
  switch (a) {
    case FilterAlgorithm::lms: return "lms";
    case FilterAlgorithm::lmf: return "lmf";
    case FilterAlgorithm::gmcc: return "gmcc";
    case FilterAlgorithm::gmee: return "gmee";
    case FilterAlgorithm::gmeef: return "gmeef";
    case FilterAlgorithm::qgmeef: return "qgmeef";
  }
  return "unknown";
}

FilterAlgorithm parse_filter_algorithm(std::string_view name) {
  for (auto a : {FilterAlgorithm::lms, FilterAlgorithm::lmf, FilterAlgorithm::gmcc,
                 FilterAlgorithm::gmee, FilterAlgorithm::gmeef, FilterAlgorithm::qgmeef}) {
    if (algorithm_name(a) == name) return a;
  }
  throw ConfigError("unknown filter algorithm '" + std::string(name) +
                    "' (expected lms, lmf, gmcc, gmee, gmeef or qgmeef)");
}

FilterState::FilterState(const FilterConfig& cfg)
    : cfg_(cfg), w_(cfg.order, 0.0), errors_(effective_window(cfg)) {
  validate(cfg);
  cfg_.window = effective_window(cfg);
  inputs_.reserve(cfg_.window * cfg_.order);
  if (cfg.convention == StepConvention::paper) {
    corr_gain_ = paper_gain(cfg.mix.corr());
    ent_gain_ = paper_gain(cfg.mix.ent());
  }
}

FilterState::FilterState(const FilterConfig& cfg, std::span<const double> initial_weights)
    : FilterState(cfg) {
  if (initial_weights.size() != w_.size()) {
    throw ShapeError("initial weights have " + std::to_string(initial_weights.size()) +
                     " entries for order " + std::to_string(w_.size()));
  }
  w_.assign(initial_weights.begin(), initial_weights.end());
}

double af_error(FilterState& state, const RegressionSample& s) {
  const std::size_t m = state.w_.size();
  if (s.input.size() != m) {
    throw ShapeError("regressor has " + std::to_string(s.input.size()) +
                     " entries for a filter of order " + std::to_string(m));
  }
  const double e = s.desired - simd::dot(state.w_, s.input);
  if (state.errors_.full()) {
    state.inputs_.erase(state.inputs_.begin(), state.inputs_.begin() + static_cast<std::ptrdiff_t>(m));
    state.code_of_.erase(state.code_of_.begin());
    state.founder_.erase(state.founder_.begin());
  }
  state.errors_.push(e);
  state.inputs_.insert(state.inputs_.end(), s.input.begin(), s.input.end());
  state.code_of_.push_back(-1);
  state.founder_.push_back(0);
  return e;
}

void apply_error_gradient(FilterState& state, std::span<const double> grad) {
  const std::size_t m = state.w_.size();
  if (grad.size() != state.errors_.size()) {
    throw ShapeError("error gradient does not match the window length");
  }
  std::vector<double> delta(m, 0.0);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (grad[i] == 0.0) continue;
    simd::axpy(-state.cfg_.mu * grad[i], std::span(state.inputs_).subspan(i * m, m), delta);
  }
  for (double d : delta) {
    if (!std::isfinite(d)) {
      throw NumericFailure(std::string(algorithm_name(state.cfg_.algorithm)) +
                               ": non-finite weight update",
                           state.iteration_ + 1);
    }
  }
  for (std::size_t k = 0; k < m; ++k) state.w_[k] += delta[k];
  state.ops_.multiplications += grad.size() * m;
  state.ops_.additions += grad.size() * m;
  ++state.iteration_;
}

void gmeef_step(FilterState& state) {
  state.ops_.reset();
  step_with_mix(state, state.cfg_.mix, state.corr_gain_, state.ent_gain_, state.ops_);
}

void qgmeef_step(FilterState& state, Codebook& book) {
  state.ops_.reset();
  const auto errs = state.errors_.samples();
  if (errs.empty()) throw EmptyInputError("filter step on an empty window");
  for (std::size_t i = 0; i < errs.size(); ++i) {
    if (state.code_of_[i] >= 0) continue;
    const auto a = book.quantize(errs[i]);
    state.code_of_[i] = static_cast<std::ptrdiff_t>(a.index);
    state.founder_[i] = a.created ? 1 : 0;
  }

  // Codes touched by the window, ordered by first member.
  std::vector<std::ptrdiff_t> local(book.size(), -1);
  std::vector<double> codes;
  std::vector<double> weights;
  std::vector<std::ptrdiff_t> founders;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    const auto g = static_cast<std::size_t>(state.code_of_[i]);
    if (g >= book.size()) {
      throw InconsistencyError("window entry refers to a code missing from the codebook");
    }
    if (local[g] < 0) {
      local[g] = static_cast<std::ptrdiff_t>(codes.size());
      codes.push_back(book.codes()[g]);
      weights.push_back(0.0);
      founders.push_back(-1);
    }
    const auto h = static_cast<std::size_t>(local[g]);
    weights[h] += 1.0;
    if (state.founder_[i]) founders[h] = static_cast<std::ptrdiff_t>(i);
  }
  state.last_codes_ = codes.size();

  const auto n = static_cast<double>(errs.size());
  double norm = 1.0 / (n * n);
  bool unit_weights = true;
  if (state.cfg_.count_mode == CountMode::global) {
    double total = 0.0;
    for (std::size_t g = 0; g < book.size(); ++g) {
      if (local[g] < 0) continue;
      weights[static_cast<std::size_t>(local[g])] = static_cast<double>(book.counts()[g]);
      total += static_cast<double>(book.counts()[g]);
    }
    norm = 1.0 / (n * total);
  }
  for (double w : weights) unit_weights = unit_weights && w == 1.0;

  // Same combination as gmeef_error_gradient so epsilon = 0 is bit-identical.
  const FiducialMix& mix = state.cfg_.mix;
  const double lambda = mix.lambda();
  const double a = lambda * state.corr_gain_;
  const double b = (1.0 - lambda) * state.ent_gain_;
  std::vector<double> grad(errs.size());
  auto entropy_term = [&](std::span<double> out) {
    qgmee_error_gradient(errs, codes, unit_weights ? std::span<const double>{} : weights, founders,
                         norm, mix.ent(), out, &state.ops_);
  };
  if (lambda == 0.0) {
    entropy_term(grad);
    for (double& g : grad) g *= b;
  } else {
    gmcc_error_gradient(errs, mix.corr(), grad, &state.ops_);
    if (lambda == 1.0) {
      for (double& g : grad) g *= a;
    } else {
      std::vector<double> ent(errs.size());
      entropy_term(ent);
      for (std::size_t i = 0; i < errs.size(); ++i) grad[i] = a * grad[i] + b * ent[i];
    }
  }
  apply_error_gradient(state, grad);
}

void baseline_step(FilterState& state, FilterAlgorithm kind) {
  state.ops_.reset();
  const auto errs = state.errors_.samples();
  if (errs.empty()) throw EmptyInputError("filter step on an empty window");
  switch (kind) {
    case FilterAlgorithm::lms:
    case FilterAlgorithm::lmf: {
      // Only the newest sample drives the update.
      std::vector<double> grad(errs.size(), 0.0);
      const double e = errs.back();
      grad.back() = kind == FilterAlgorithm::lms ? -e : -e * e * e;
      state.ops_.multiplications += kind == FilterAlgorithm::lms ? 1 : 3;
      apply_error_gradient(state, grad);
      return;
    }
    case FilterAlgorithm::gmcc:
      step_with_mix(state, FiducialMix(1.0, state.cfg_.mix.corr(), state.cfg_.mix.ent()),
                    state.corr_gain_, state.ent_gain_, state.ops_);
      return;
    case FilterAlgorithm::gmee:
      step_with_mix(state, FiducialMix(0.0, state.cfg_.mix.corr(), state.cfg_.mix.ent()),
                    state.corr_gain_, state.ent_gain_, state.ops_);
      return;
    default:
      throw ParameterError("baseline_step accepts lms, lmf, gmcc or gmee, got " +
                           std::string(algorithm_name(kind)));
  }
}

void filter_step(FilterState& state, Codebook* book) {
  switch (state.algorithm()) {
    case FilterAlgorithm::gmeef:
      gmeef_step(state);
      return;
    case FilterAlgorithm::qgmeef:
      if (!book) throw ParameterError("qgmeef step needs a codebook");
      qgmeef_step(state, *book);
      return;
    default:
      baseline_step(state, state.algorithm());
  }
}

}  // namespace gmeef
