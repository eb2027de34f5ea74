#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gmeef/dataset.hpp"
#include "gmeef/error.hpp"
#include "gmeef/mlp.hpp"
#include "oracles.hpp"

using namespace gmeef;

namespace {

const FiducialMix kClassifierMix{0.8, GgdParams(2.0, 1.5), GgdParams(2.5, 3.0)};

struct Batch {
  std::vector<double> x, t;
  std::size_t n;
  PairBatch view() const { return {n, x, t}; }
};

Batch random_batch(std::mt19937_64& rng, std::size_t n, std::size_t in, std::size_t out) {
  Batch b;
  b.n = n;
  b.x = oracle::normals(n * in, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  b.t.resize(n * out);
  for (double& v : b.t) v = u(rng) < 0.5 ? 0.0 : 1.0;
  return b;
}

MlpNet random_net(std::mt19937_64& rng, std::vector<std::size_t> sizes) {
  MlpNet net = mlp_zeros(sizes);
  for (auto& w : net.weights) w = oracle::normals(w.size(), rng);
  for (auto& b : net.biases) b = oracle::normals(b.size(), rng, 0.5);
  return net;
}

// Layer-by-layer forward pass written out with plain loops.
std::vector<double> forward_oracle(const MlpNet& net, std::vector<double> a) {
  for (std::size_t l = 0; l < net.layers(); ++l) {
    std::vector<double> next(net.sizes[l + 1]);
    for (std::size_t j = 0; j < next.size(); ++j) {
      double s = net.biases[l][j];
      for (std::size_t i = 0; i < a.size(); ++i) s += net.weights[l][j * a.size() + i] * a[i];
      next[j] = 1.0 / (1.0 + std::exp(-s));
    }
    a = next;
  }
  return a;
}

// Cost from first principles: forward oracle, then the potential or CE.
double cost_oracle(const MlpNet& net, const Batch& b, CostKind kind, const FiducialMix& mix) {
  const std::size_t in = net.inputs(), out = net.outputs();
  std::vector<std::vector<double>> errs(out);
  double ce = 0.0;
  for (std::size_t s = 0; s < b.n; ++s) {
    const auto y = forward_oracle(net, {b.x.begin() + s * in, b.x.begin() + (s + 1) * in});
    for (std::size_t k = 0; k < out; ++k) {
      const double t = b.t[s * out + k];
      errs[k].push_back(t - y[k]);
      ce += t * std::log(y[k]) + (1 - t) * std::log(1 - y[k]);
    }
  }
  if (kind == CostKind::ce) return ce / static_cast<double>(b.n);
  double c = 0.0;
  const auto& p1 = mix.corr();
  const auto& p2 = mix.ent();
  for (const auto& e : errs) {
    switch (kind) {
      case CostKind::gmcc: c += oracle::gmcc(e, p1.alpha(), p1.beta()); break;
      case CostKind::gmee: c += oracle::gmee(e, p2.alpha(), p2.beta()); break;
      default: c += oracle::gmeef(e, mix.lambda(), p1.alpha(), p1.beta(), p2.alpha(), p2.beta());
    }
  }
  return c;
}

}  // namespace

TEST(MlpForward, ZeroNetAndOracle) {
  const std::vector<std::size_t> sizes{3, 4, 2};
  const auto zero = mlp_zeros(sizes);
  MlpCache cache;
  const std::vector<double> x{1.0, -2.0, 0.5};
  for (double y : mlp_forward(zero, x, cache)) EXPECT_EQ(y, 0.5);
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_EQ(sigmoid(0.0) * (1 - sigmoid(0.0)), 0.25);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto net = random_net(rng, {2, 3, 2});
    const auto in = oracle::normals(2, rng, 3.0);
    const auto y = mlp_forward(net, in, cache);
    const auto ref = forward_oracle(net, in);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(y[k], ref[k], 1e-12);
      EXPECT_GT(y[k], 0.0);
      EXPECT_LT(y[k], 1.0);
    }
  }
  EXPECT_THROW(mlp_forward(zero, std::vector<double>{1.0}, cache), ShapeError);
  EXPECT_THROW(mlp_zeros(std::vector<std::size_t>{3}), ParameterError);
}

TEST(MlpInit, XavierRangeAndSeeded) {
  const std::vector<std::size_t> sizes{10, 6, 4};
  const auto a = mlp_init(sizes, 7), b = mlp_init(sizes, 7);
  EXPECT_EQ(a.weights, b.weights);
  const double r0 = std::sqrt(6.0 / 16.0);
  for (double w : a.weights[0]) EXPECT_LE(std::abs(w), r0);
  for (double v : a.biases[1]) EXPECT_EQ(v, 0.0);
}

TEST(PairCost, MatchesBruteForce) {
  std::mt19937_64 rng(2);
  for (auto kind : {CostKind::ce, CostKind::gmcc, CostKind::gmee, CostKind::gmeef}) {
    for (int t = 0; t < 10; ++t) {
      const auto net = random_net(rng, {3, 4, 2});
      const auto b = random_batch(rng, 4, 3, 2);
      EXPECT_NEAR(gmeef_pair_cost(net, b.view(), kind, kClassifierMix), cost_oracle(net, b, kind, kClassifierMix), 1e-12);
    }
  }
}

TEST(PairCost, StructuralProperties) {
  std::mt19937_64 rng(3);
  const auto net = random_net(rng, {3, 5, 3});
  auto b = random_batch(rng, 6, 3, 3);
  const double c = gmeef_pair_cost(net, b.view(), CostKind::gmeef, kClassifierMix);
  // permutation of the batch
  Batch p = b;
  for (std::size_t s = 0; s < 6; ++s) {
    std::copy_n(b.x.begin() + (5 - s) * 3, 3, p.x.begin() + s * 3);
    std::copy_n(b.t.begin() + (5 - s) * 3, 3, p.t.begin() + s * 3);
  }
  EXPECT_NEAR(gmeef_pair_cost(net, p.view(), CostKind::gmeef, kClassifierMix), c, 1e-14);
  // swap output neurons 0 and 2 together with their targets
  MlpNet sw = net;
  const std::size_t h = net.sizes[1];
  for (std::size_t i = 0; i < h; ++i) std::swap(sw.weights[1][0 * h + i], sw.weights[1][2 * h + i]);
  std::swap(sw.biases[1][0], sw.biases[1][2]);
  Batch st = b;
  for (std::size_t s = 0; s < 6; ++s) std::swap(st.t[s * 3], st.t[s * 3 + 2]);
  EXPECT_NEAR(gmeef_pair_cost(sw, st.view(), CostKind::gmeef, kClassifierMix), c, 1e-14);
}

TEST(PairCost, PerfectPredictionIsTheMaximum) {
  // Targets equal to the outputs of a fixed net.
  std::mt19937_64 rng(4);
  const auto net = random_net(rng, {2, 3, 2});
  Batch b = random_batch(rng, 5, 2, 2);
  MlpCache cache;
  for (std::size_t s = 0; s < 5; ++s) {
    const auto y = mlp_forward(net, std::span<const double>(b.x).subspan(s * 2, 2), cache);
    b.t[s * 2] = y[0];
    b.t[s * 2 + 1] = y[1];
  }
  EXPECT_NEAR(gmeef_pair_cost(net, b.view(), CostKind::gmeef, kClassifierMix), 2 * kClassifierMix.bound(), 1e-14);
  const auto g = cost_gradient(net, b.view(), CostKind::gmeef, kClassifierMix);
  for (const auto& w : g.weights) {
    for (double v : w) EXPECT_NEAR(v, 0.0, 1e-15);
  }
}

TEST(CostGradient, MatchesFiniteDifferencesForAllCosts) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(1.5, 3.5), ub(0.5, 3.0), ul(0.0, 1.0);
  for (auto kind : {CostKind::ce, CostKind::gmcc, CostKind::gmee, CostKind::gmeef}) {
    for (int t = 0; t < 50; ++t) {
      const FiducialMix mix(ul(rng), GgdParams(ua(rng), ub(rng)), GgdParams(ua(rng), ub(rng)));
      MlpNet net = random_net(rng, {2, 3, 2});
      const auto b = random_batch(rng, 4, 2, 2);
      const auto g = cost_gradient(net, b.view(), kind, mix);
      double scale = 0.0;
      for (const auto& w : g.weights) for (double v : w) scale = std::max(scale, std::abs(v));
      for (const auto& w : g.biases) for (double v : w) scale = std::max(scale, std::abs(v));
      auto check = [&](std::vector<double>& param, const std::vector<double>& grad) {
        for (std::size_t i = 0; i < param.size(); ++i) {
          const double p0 = param[i];
          param[i] = p0 + 1e-6;
          const double fp = cost_oracle(net, b, kind, mix);
          param[i] = p0 - 1e-6;
          const double fm = cost_oracle(net, b, kind, mix);
          param[i] = p0;
          const double fd = (fp - fm) / 2e-6;
          EXPECT_LE(std::abs(grad[i] - fd) / std::max(scale, 1e-8), 1e-5) << cost_name(kind) << " t=" << t;
        }
      };
      for (std::size_t l = 0; l < net.layers(); ++l) {
        check(net.weights[l], g.weights[l]);
        check(net.biases[l], g.biases[l]);
      }
    }
  }
}

TEST(CostGradient, LambdaOneIsPerSampleFiducial) {
  // Separately coded single-sum gradient for one output neuron net (2-1).
  std::mt19937_64 rng(6);
  const FiducialMix mix(1.0, GgdParams(2.0, 1.5), GgdParams(2.5, 3.0));
  const auto net = random_net(rng, {2, 1});
  const auto b = random_batch(rng, 5, 2, 1);
  std::vector<double> gw(2, 0.0);
  double gb = 0.0;
  for (std::size_t s = 0; s < 5; ++s) {
    const double* x = &b.x[s * 2];
    const double y = 1.0 / (1.0 + std::exp(-(net.weights[0][0] * x[0] + net.weights[0][1] * x[1] + net.biases[0][0])));
    const double e = b.t[s] - y;
    // d/dy of G(t - y)/L
    const double dG = -ggd_score(e, mix.corr()) / 5.0;
    gw[0] += dG * y * (1 - y) * x[0];
    gw[1] += dG * y * (1 - y) * x[1];
    gb += dG * y * (1 - y);
  }
  const auto g = cost_gradient(net, b.view(), CostKind::gmeef, mix);
  EXPECT_NEAR(g.weights[0][0], gw[0], 1e-14);
  EXPECT_NEAR(g.weights[0][1], gw[1], 1e-14);
  EXPECT_NEAR(g.biases[0][0], gb, 1e-14);
}

TEST(Backprop, StepsAlongGradientAndValidates) {
  std::mt19937_64 rng(7);
  MlpNet net = random_net(rng, {2, 3, 2});
  const auto b = random_batch(rng, 4, 2, 2);
  const auto g = cost_gradient(net, b.view(), CostKind::gmeef, kClassifierMix);
  const MlpNet before = net;
  gmeef_backprop(net, b.view(), CostKind::gmeef, kClassifierMix, 0.25);
  for (std::size_t l = 0; l < net.layers(); ++l) {
    for (std::size_t i = 0; i < net.weights[l].size(); ++i) {
      EXPECT_NEAR(net.weights[l][i], before.weights[l][i] + 0.25 * g.weights[l][i], 1e-15);
    }
  }
  EXPECT_THROW(gmeef_backprop(net, b.view(), CostKind::gmeef, kClassifierMix, 0.0), ParameterError);
  PairBatch empty{0, {}, {}};
  EXPECT_THROW(gmeef_backprop(net, empty, CostKind::gmeef, kClassifierMix, 0.1), EmptyInputError);
  EXPECT_EQ(parse_cost("gmee"), CostKind::gmee);
  EXPECT_THROW(parse_cost("mse"), ConfigError);
}

TEST(Train, ZeroEpochsKeepsUntrainedAccuracy) {
  const auto d = make_clusters(100, 2, 4, 0.5, 1);
  const std::vector<std::size_t> sizes{4, 5, 2};
  const auto net = mlp_init(sizes, 3);
  TrainConfig cfg;
  cfg.epochs = 0;
  const auto r = mlp_train(net, d, d, cfg);
  ASSERT_EQ(r.train_accuracy.size(), 1u);
  EXPECT_EQ(r.train_accuracy[0], mlp_accuracy(net, d));
  EXPECT_EQ(r.net.weights, net.weights);
}

TEST(Train, SeparableClustersReachFullTrainingAccuracy) {
  const auto d = make_clusters(200, 2, 4, 0.5, 2);
  const std::vector<std::size_t> sizes{4, 6, 2};
  for (auto kind : {CostKind::ce, CostKind::gmcc, CostKind::gmee, CostKind::gmeef}) {
    TrainConfig cfg;
    cfg.cost = kind;
    cfg.epochs = 200;
    cfg.rate = kind == CostKind::ce ? 0.5 : kind == CostKind::gmee ? 50.0 : 10.0;
    const auto r = mlp_train(mlp_init(sizes, 4), d, d, cfg);
    double best = 0.0;
    for (double a : r.train_accuracy) best = std::max(best, a);
    EXPECT_EQ(best, 1.0) << cost_name(kind);
  }
}

TEST(Train, DeterministicAndModesDiffer) {
  const auto d = make_clusters(60, 3, 4, 1.0, 5);
  const std::vector<std::size_t> sizes{4, 5, 3};
  TrainConfig cfg;
  cfg.epochs = 3;
  const auto a = mlp_train(mlp_init(sizes, 1), d, d, cfg);
  const auto b = mlp_train(mlp_init(sizes, 1), d, d, cfg);
  EXPECT_EQ(a.net.weights, b.net.weights);
  cfg.mode = TrainMode::online;
  const auto c = mlp_train(mlp_init(sizes, 1), d, d, cfg);
  EXPECT_NE(a.net.weights, c.net.weights);
}

TEST(Datasets, GeneratorsAndLoaders) {
  const auto g = make_glyph_digits(50, 1);
  EXPECT_EQ(g.features, 64u);
  EXPECT_EQ(g.classes, 10u);
  for (double v : g.x) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
  const auto c = make_clusters(30, 3, 2, 0.5, 1);
  EXPECT_EQ(c.labels[4], 1u);
  const auto oh = c.one_hot();
  EXPECT_EQ(oh[4 * 3 + 1], 1.0);
  const auto part = take(c, 10, 5);
  EXPECT_EQ(part.size(), 5u);
  EXPECT_EQ(part.labels[0], c.labels[10]);
  EXPECT_THROW(take(c, 28, 5), ParameterError);
}
