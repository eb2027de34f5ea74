#include "gmeef/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "gmeef/error.hpp"

namespace gmeef {
namespace {

void check_sizes(std::span<const std::size_t> sizes) {
  if (sizes.size() < 2) throw ParameterError("a network needs at least an input and an output layer");
  for (std::size_t s : sizes) {
    if (s == 0) throw ParameterError("layer widths must be positive");
  }
}

void check_batch(const MlpNet& net, const PairBatch& b) {
  if (b.size == 0) throw EmptyInputError("empty training window");
  if (b.inputs.size() != b.size * net.inputs() || b.targets.size() != b.size * net.outputs()) {
    throw ShapeError("batch buffers do not match the network shape");
  }
}

// Forward pass for every sample of the batch.
std::vector<MlpCache> forward_all(const MlpNet& net, const PairBatch& b) {
  std::vector<MlpCache> caches(b.size);
  for (std::size_t s = 0; s < b.size; ++s) {
    mlp_forward(net, b.inputs.subspan(s * net.inputs(), net.inputs()), caches[s]);
  }
  return caches;
}

// errs[k][s] = t_k - y_k for sample s.
std::vector<std::vector<double>> neuron_errors(const MlpNet& net, const PairBatch& b,
                                               const std::vector<MlpCache>& caches) {
  const std::size_t out = net.outputs();
  std::vector<std::vector<double>> errs(out, std::vector<double>(b.size));
  for (std::size_t s = 0; s < b.size; ++s) {
    const auto& y = caches[s].act.back();
    for (std::size_t k = 0; k < out; ++k) errs[k][s] = b.targets[s * out + k] - y[k];
  }
  return errs;
}

double clamp_prob(double y) { return std::clamp(y, 1e-15, 1.0 - 1e-15); }

}  // namespace

double sigmoid(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

MlpNet mlp_zeros(std::span<const std::size_t> sizes) {
  check_sizes(sizes);
  MlpNet net;
  net.sizes.assign(sizes.begin(), sizes.end());
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    net.weights.emplace_back(sizes[l + 1] * sizes[l], 0.0);
    net.biases.emplace_back(sizes[l + 1], 0.0);
  }
  return net;
}

MlpNet mlp_init(std::span<const std::size_t> sizes, std::uint64_t seed) {
  MlpNet net = mlp_zeros(sizes);
  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l < net.layers(); ++l) {
    const double r = std::sqrt(6.0 / static_cast<double>(sizes[l] + sizes[l + 1]));
    std::uniform_real_distribution<double> u(-r, r);
    for (double& w : net.weights[l]) w = u(rng);
  }
  return net;
}

std::span<const double> mlp_forward(const MlpNet& net, std::span<const double> x, MlpCache& cache) {
  if (x.size() != net.inputs()) {
    throw ShapeError("input has " + std::to_string(x.size()) + " features, network expects " +
                     std::to_string(net.inputs()));
  }
  cache.act.resize(net.sizes.size());
  cache.act[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < net.layers(); ++l) {
    auto& next = cache.act[l + 1];
    next.resize(net.sizes[l + 1]);
    simd::gemv(net.weights[l].data(), net.sizes[l + 1], net.sizes[l], net.sizes[l], cache.act[l],
               next);
    for (std::size_t j = 0; j < next.size(); ++j) next[j] = sigmoid(next[j] + net.biases[l][j]);
  }
  return cache.act.back();
}

std::string_view cost_name(CostKind c) noexcept {
  switch (c) {
    case CostKind::ce: return "ce";
    case CostKind::gmcc: return "gmcc";
    case CostKind::gmee: return "gmee";
    case CostKind::gmeef: return "gmeef";
  }
  return "unknown";
}

CostKind parse_cost(std::string_view name) {
  for (auto c : {CostKind::ce, CostKind::gmcc, CostKind::gmee, CostKind::gmeef}) {
    if (cost_name(c) == name) return c;
  }
  throw ConfigError("unknown cost '" + std::string(name) + "' (expected ce, gmcc, gmee or gmeef)");
}

double gmeef_pair_cost(const MlpNet& net, const PairBatch& batch, CostKind kind,
                       const FiducialMix& mix) {
  check_batch(net, batch);
  const auto caches = forward_all(net, batch);
  if (kind == CostKind::ce) {
    const std::size_t out = net.outputs();
    double s = 0.0;
    for (std::size_t i = 0; i < batch.size; ++i) {
      const auto& y = caches[i].act.back();
      for (std::size_t k = 0; k < out; ++k) {
        const double t = batch.targets[i * out + k];
        const double p = clamp_prob(y[k]);
        s += t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
      }
    }
    return s / static_cast<double>(batch.size);
  }
  double cost = 0.0;
  for (const auto& e : neuron_errors(net, batch, caches)) {
    switch (kind) {
      case CostKind::gmcc: cost += gmcc_ip(e, mix.corr()); break;
      case CostKind::gmee: cost += gmee_ip(e, mix.ent()); break;
      default: cost += gmeef_ip(e, mix); break;
    }
  }
  return cost;
}

MlpNet cost_gradient(const MlpNet& net, const PairBatch& batch, CostKind kind,
                     const FiducialMix& mix) {
  check_batch(net, batch);
  const auto caches = forward_all(net, batch);
  const std::size_t out = net.outputs();
  const std::size_t nl = net.layers();

  // delta_out[s][k] = dJ/d(net input of output neuron k) for sample s.
  std::vector<std::vector<double>> delta_out(batch.size, std::vector<double>(out));
  if (kind == CostKind::ce) {
    const double inv = 1.0 / static_cast<double>(batch.size);
    for (std::size_t s = 0; s < batch.size; ++s) {
      const auto& y = caches[s].act.back();
      for (std::size_t k = 0; k < out; ++k) delta_out[s][k] = (batch.targets[s * out + k] - y[k]) * inv;
    }
  } else {
    const auto errs = neuron_errors(net, batch, caches);
    std::vector<double> g(batch.size);
    for (std::size_t k = 0; k < out; ++k) {
      switch (kind) {
        case CostKind::gmcc: gmcc_error_gradient(errs[k], mix.corr(), g); break;
        case CostKind::gmee: gmee_error_gradient(errs[k], mix.ent(), g); break;
        default: gmeef_error_gradient(errs[k], mix, g); break;
      }
      // de/dy = -1, dy/dnet = y (1 - y)
      for (std::size_t s = 0; s < batch.size; ++s) {
        const double y = caches[s].act.back()[k];
        delta_out[s][k] = -g[s] * y * (1.0 - y);
      }
    }
  }

  MlpNet grad = mlp_zeros(net.sizes);
  std::vector<double> delta;
  std::vector<double> prev;
  for (std::size_t s = 0; s < batch.size; ++s) {
    delta = delta_out[s];
    for (std::size_t l = nl; l-- > 0;) {
      const auto& a = caches[s].act[l];
      simd::rank1_update(grad.weights[l].data(), net.sizes[l], 1.0, delta, a);
      for (std::size_t j = 0; j < delta.size(); ++j) grad.biases[l][j] += delta[j];
      if (l == 0) break;
      prev.assign(net.sizes[l], 0.0);
      simd::gemv_t_add(net.weights[l].data(), net.sizes[l + 1], net.sizes[l], net.sizes[l], delta,
                       prev);
      for (std::size_t i = 0; i < prev.size(); ++i) prev[i] *= a[i] * (1.0 - a[i]);
      delta.swap(prev);
    }
  }
  return grad;
}

void gmeef_backprop(MlpNet& net, const PairBatch& batch, CostKind kind, const FiducialMix& mix,
                    double rate, std::size_t step) {
  if (!(rate > 0.0)) throw ParameterError("learning rate must be > 0");
  const MlpNet g = cost_gradient(net, batch, kind, mix);
  for (std::size_t l = 0; l < net.layers(); ++l) {
    for (double v : g.weights[l]) {
      if (!std::isfinite(v)) throw NumericFailure("mlp: non-finite weight gradient", step);
    }
    for (double v : g.biases[l]) {
      if (!std::isfinite(v)) throw NumericFailure("mlp: non-finite bias gradient", step);
    }
  }
  for (std::size_t l = 0; l < net.layers(); ++l) {
    simd::axpy(rate, g.weights[l], net.weights[l]);
    simd::axpy(rate, g.biases[l], net.biases[l]);
  }
}

double mlp_accuracy(const MlpNet& net, const Dataset& data) {
  if (data.size() == 0) throw EmptyInputError("accuracy of an empty dataset");
  MlpCache cache;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto y = mlp_forward(net, data.row(i), cache);
    const auto best = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    hits += best == data.labels[i] ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

TrainResult mlp_train(MlpNet net, const Dataset& train, const Dataset& test, const TrainConfig& cfg) {
  if (train.size() == 0) throw EmptyInputError("empty training set");
  if (cfg.window == 0) throw ParameterError("training window must be positive");
  if (train.features != net.inputs() || train.classes != net.outputs()) {
    throw ShapeError("dataset shape does not match the network");
  }
  const std::vector<double> targets = train.one_hot();
  const std::size_t out = train.classes;

  TrainResult res;
  res.train_accuracy.push_back(mlp_accuracy(net, train));
  res.test_accuracy.push_back(test.size() ? mlp_accuracy(net, test) : 0.0);

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> bx;
  std::vector<double> bt;
  std::size_t step = 0;

  auto run_window = [&](std::span<const std::size_t> idx) {
    bx.clear();
    bt.clear();
    for (std::size_t i : idx) {
      const auto r = train.row(i);
      bx.insert(bx.end(), r.begin(), r.end());
      bt.insert(bt.end(), targets.begin() + static_cast<std::ptrdiff_t>(i * out),
                targets.begin() + static_cast<std::ptrdiff_t>((i + 1) * out));
    }
    PairBatch b{idx.size(), bx, bt};
    gmeef_backprop(net, b, cfg.cost, cfg.mix, cfg.rate, ++step);
  };

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    if (cfg.mode == TrainMode::batch) {
      for (std::size_t start = 0; start < order.size(); start += cfg.window) {
        const std::size_t len = std::min(cfg.window, order.size() - start);
        run_window(std::span(order).subspan(start, len));
      }
    } else {
      for (std::size_t i = 0; i < order.size(); ++i) {
        const std::size_t len = std::min(cfg.window, i + 1);
        run_window(std::span(order).subspan(i + 1 - len, len));
      }
    }
    res.train_accuracy.push_back(mlp_accuracy(net, train));
    res.test_accuracy.push_back(test.size() ? mlp_accuracy(net, test) : 0.0);
  }
  res.net = std::move(net);
  return res;
}

}  // namespace gmeef
