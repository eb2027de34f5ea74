#include "gmeef/experiments/sysid.hpp"

#include <cmath>
#include <limits>

#include "gmeef/error.hpp"
#include "gmeef/experiments/metrics.hpp"
#include "gmeef/experiments/signals.hpp"

namespace gmeef::exp {
namespace {

struct TrialRun {
  std::vector<std::vector<double>> dev;  // per algorithm, normalized deviation per iteration
  std::vector<std::size_t> stop;         // per algorithm, first failed iteration (or iterations+1)
  std::vector<std::vector<double>> h;    // per algorithm, codes per iteration (QGMEEF)
};

struct Aggregate {
  std::vector<double> msd_db;
  std::optional<std::size_t> diverged_at;
  std::vector<double> h_mean;  // per iteration, trial-averaged
  double h_ave = std::numeric_limits<double>::quiet_NaN();
};

TrialRun run_trial(const std::vector<AlgorithmSpec>& specs, const std::vector<double>& w0,
                   const NoiseSpec& noise, std::uint64_t seed, std::size_t trial,
                   std::size_t iterations) {
  const std::size_t m = w0.size();
  auto input_rng = make_rng(seed, trial, 1);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> x(iterations + m - 1);
  for (double& v : x) v = z(input_rng);
  NoiseSource src(noise, make_rng(seed, trial, 2));
  std::vector<double> d(iterations);
  for (std::size_t n = 0; n < iterations; ++n) {
    d[n] = simd::dot(w0, std::span(x).subspan(n, m)) + src();
  }

  TrialRun out;
  out.dev.resize(specs.size());
  out.stop.assign(specs.size(), iterations + 1);
  out.h.resize(specs.size());
  for (std::size_t a = 0; a < specs.size(); ++a) {
    FilterState st(specs[a].filter(m));
    Codebook book(specs[a].epsilon);
    const bool quantized = st.algorithm() == FilterAlgorithm::qgmeef;
    auto& dev = out.dev[a];
    dev.reserve(iterations + 1);
    dev.push_back(normalized_deviation(w0, st.weights()));
    if (quantized) out.h[a].assign(iterations + 1, 0.0);
    for (std::size_t n = 0; n < iterations; ++n) {
      try {
        af_error(st, {std::span(x).subspan(n, m), d[n]});
        filter_step(st, &book);
      } catch (const NumericFailure&) {
        out.stop[a] = n + 1;
        break;
      }
      const double v = normalized_deviation(w0, st.weights());
      if (!std::isfinite(v)) {
        out.stop[a] = n + 1;
        break;
      }
      dev.push_back(v);
      if (quantized) out.h[a][n + 1] = static_cast<double>(st.last_code_count());
    }
  }
  return out;
}

std::vector<Aggregate> simulate(const std::vector<AlgorithmSpec>& specs, const std::vector<double>& w0,
                                const NoiseSpec& noise, std::uint64_t seed, std::size_t trials,
                                std::size_t iterations, std::size_t threads) {
  const auto runs = run_indexed<TrialRun>(trials, threads, [&](std::size_t t) {
    return run_trial(specs, w0, noise, seed, t, iterations);
  });
  std::vector<Aggregate> agg(specs.size());
  for (std::size_t a = 0; a < specs.size(); ++a) {
    std::size_t stop = iterations + 1;
    for (const auto& r : runs) stop = std::min(stop, r.stop[a]);
    std::vector<double> sum(stop, 0.0);
    for (const auto& r : runs) {
      for (std::size_t i = 0; i < stop; ++i) sum[i] += r.dev[a][i];
    }
    auto& g = agg[a];
    g.msd_db.resize(stop);
    for (std::size_t i = 0; i < stop; ++i) g.msd_db[i] = to_db(sum[i] / static_cast<double>(trials));
    if (stop <= iterations) g.diverged_at = stop;

    if (!runs.empty() && !runs.front().h[a].empty()) {
      const std::size_t window = specs[a].window;
      g.h_mean.assign(stop, 0.0);
      double total = 0.0;
      std::size_t count = 0;
      for (const auto& r : runs) {
        for (std::size_t i = 1; i < stop; ++i) {
          g.h_mean[i] += r.h[a][i];
          if (i >= window) {
            total += r.h[a][i];
            ++count;
          }
        }
      }
      for (double& v : g.h_mean) v /= static_cast<double>(trials);
      if (count) g.h_ave = total / static_cast<double>(count);
    }
  }
  return agg;
}

std::vector<double> resolve_weights(const SysidConfig& cfg) {
  if (!cfg.true_weights.empty()) return cfg.true_weights;
  return random_unit_weights(cfg.order, cfg.seed);
}

}  // namespace

double calibrate_matched_mu(const SysidConfig& cfg, const AlgorithmSpec& reference,
                            const AlgorithmSpec& target) {
  const auto w0 = resolve_weights(cfg);
  NoiseSpec clean;
  clean.kind = NoiseKind::none;
  const std::size_t trials = std::max<std::size_t>(1, std::min(cfg.calibration_trials, cfg.trials));

  struct Timing {
    bool diverged = false;
    std::optional<std::size_t> reached;
  };
  auto time_to = [&](const AlgorithmSpec& s) {
    const auto g = simulate({s}, w0, clean, cfg.seed, trials, cfg.iterations, cfg.threads).front();
    Timing t;
    t.diverged = g.diverged_at.has_value();
    t.reached = first_at_or_below(g.msd_db, cfg.match_threshold_db);
    return t;
  };

  const auto ref = time_to(reference);
  if (ref.diverged || !ref.reached) {
    throw ConfigError("cannot match step size: '" + reference.name + "' never reaches " +
                      std::to_string(cfg.match_threshold_db) + " dB without noise");
  }
  AlgorithmSpec probe = target;
  probe.mu_matched = false;
  double lo = std::log(1e-6);
  double hi = std::log(1.0);
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    probe.mu = std::exp(mid);
    // Divergence counts as too fast; never reaching the threshold as too slow.
    const auto t = time_to(probe);
    if (t.diverged || (t.reached && *t.reached < *ref.reached)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

SysidResult run_sysid(const SysidConfig& cfg) {
  if (cfg.algorithms.empty()) throw ConfigError("sysid: no algorithms configured");
  if (cfg.trials == 0 || cfg.iterations == 0) throw ConfigError("sysid: trials and iterations must be positive");
  SysidResult res;
  res.true_weights = resolve_weights(cfg);
  if (res.true_weights.size() != cfg.order) {
    throw ConfigError("sysid: true weight vector has " + std::to_string(res.true_weights.size()) +
                      " entries but order is " + std::to_string(cfg.order));
  }

  std::vector<AlgorithmSpec> specs = cfg.algorithms;
  for (auto& s : specs) {
    if (!s.mu_matched) continue;
    const AlgorithmSpec* ref = nullptr;
    for (const auto& r : cfg.algorithms) {
      if (r.name == s.match && !r.mu_matched) ref = &r;
    }
    if (!ref) {
      throw ConfigError("algorithm '" + s.name + "' matches its step size to '" + s.match +
                        "', which is not a fixed-step algorithm of this run");
    }
    s.mu = calibrate_matched_mu(cfg, *ref, s);
    s.mu_matched = false;
  }
  for (const auto& s : specs) res.mu_used[s.name] = s.mu;

  const auto agg = simulate(specs, res.true_weights, cfg.noise, cfg.seed, cfg.trials, cfg.iterations,
                            cfg.threads);
  for (std::size_t a = 0; a < specs.size(); ++a) {
    res.curves.push_back({specs[a].name, agg[a].msd_db, agg[a].diverged_at});
    if (!agg[a].h_mean.empty()) {
      std::vector<double> h(agg[a].h_mean.begin() + 1, agg[a].h_mean.end());
      res.code_counts.push_back({specs[a].name, std::move(h), agg[a].diverged_at});
      res.h_ave[specs[a].name] = agg[a].h_ave;
    }
  }
  return res;
}

}  // namespace gmeef::exp
