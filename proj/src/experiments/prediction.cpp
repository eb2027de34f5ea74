#include "gmeef/experiments/prediction.hpp"

#include <string>

#include "gmeef/error.hpp"

namespace gmeef::exp {
namespace {

struct TrialCurves {
  std::vector<std::vector<double>> mse;
  std::vector<std::size_t> stop;
  std::vector<std::size_t> rejected;
};

bool is_kernel(const AlgorithmSpec& s) { return s.type == "krgmeef"; }

}  // namespace

void MgPredictionConfig::validate() const {
  if (embedding == 0) throw ConfigError("mg: embedding must be positive");
  if (train < 2 || test == 0) throw ConfigError("mg: need train >= 2 and test >= 1");
  if (trials == 0) throw ConfigError("mg: trials must be positive");
  if (algorithms.empty()) throw ConfigError("mg: no algorithms configured");
  noise.validate();
}

MgPredictionResult run_mg_prediction(const MgPredictionConfig& cfg) {
  cfg.validate();
  MgConfig mg = cfg.series;
  mg.length = cfg.embedding + cfg.train + cfg.test;
  const auto series = gen_mackey_glass(mg);
  const std::size_t m = cfg.embedding;

  // Sample k predicts series[k + m] from series[k .. k + m).
  auto input = [&](std::size_t k) { return std::span(series).subspan(k, m); };
  const std::size_t test0 = cfg.train;

  auto test_mse = [&](auto&& predict) {
    double s = 0.0;
    for (std::size_t k = test0; k < test0 + cfg.test; ++k) {
      const double r = series[k + m] - predict(input(k));
      s += r * r;
    }
    return s / static_cast<double>(cfg.test);
  };

  const auto runs = run_indexed<TrialCurves>(cfg.trials, cfg.threads, [&](std::size_t trial) {
    NoiseSource src(cfg.noise, make_rng(cfg.seed, trial, 3));
    std::vector<double> target(cfg.train);
    for (std::size_t k = 0; k < cfg.train; ++k) target[k] = series[k + m] + src();

    TrialCurves out;
    out.mse.resize(cfg.algorithms.size());
    out.stop.assign(cfg.algorithms.size(), cfg.train);
    out.rejected.assign(cfg.algorithms.size(), 0);
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const auto& spec = cfg.algorithms[a];
      auto& curve = out.mse[a];
      curve.reserve(cfg.train);
      if (is_kernel(spec)) {
        KernelModel model = kr_init({input(0), target[0]}, spec.kernel());
        curve.push_back(test_mse([&](auto x) { return kr_predict(model, x); }));
        for (std::size_t k = 1; k < cfg.train; ++k) {
          try {
            kr_update(model, {input(k), target[k]});
          } catch (const IllConditionedUpdate&) {
            ++out.rejected[a];
          }
          curve.push_back(test_mse([&](auto x) { return kr_predict(model, x); }));
        }
      } else {
        FilterState st(spec.filter(m));
        Codebook book(spec.epsilon);
        for (std::size_t k = 0; k < cfg.train; ++k) {
          try {
            af_error(st, {input(k), target[k]});
            filter_step(st, &book);
          } catch (const NumericFailure&) {
            out.stop[a] = k;
            break;
          }
          curve.push_back(test_mse([&](auto x) { return simd::dot(st.weights(), x); }));
        }
      }
    }
    return out;
  });

  MgPredictionResult res;
  res.rejected.assign(cfg.algorithms.size(), 0);
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    std::size_t stop = cfg.train;
    for (const auto& r : runs) stop = std::min(stop, r.stop[a]);
    Curve c{cfg.algorithms[a].name, std::vector<double>(stop, 0.0), std::nullopt};
    for (const auto& r : runs) {
      for (std::size_t i = 0; i < stop; ++i) c.values[i] += r.mse[a][i];
      res.rejected[a] += r.rejected[a];
    }
    for (double& v : c.values) v /= static_cast<double>(cfg.trials);
    if (stop < cfg.train) c.diverged_at = stop + 1;
    res.mse.push_back(std::move(c));
  }
  return res;
}

}  // namespace gmeef::exp
