#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "gmeef/error.hpp"
#include "gmeef/kernel_recursive.hpp"
#include "oracles.hpp"

using namespace gmeef;

namespace {

double kernel_oracle(const std::vector<double>& a, const std::vector<double>& b, double sigma) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::exp(-s / (2 * sigma * sigma));
}

// Diagonal weight of a new center, written out from the formula.
double psi_oracle(double e, const std::vector<double>& prev, double lam, double a1, double b1, double a2,
                  double b2) {
  const double n = static_cast<double>(prev.size() + 1);
  auto pw = [](double v, double a) { return std::pow(std::max(std::abs(v), 1e-8), a - 2.0); };
  double psi = lam * (a1 / std::pow(b1, a1)) / n * oracle::ggd(e, a1, b1) * pw(e, a1);
  for (double ek : prev) {
    psi += 2.0 * (1.0 - lam) * (a2 / std::pow(b2, a2)) / (n * n) * oracle::ggd(e - ek, a2, b2) * pw(e - ek, a2);
  }
  return std::max(psi, 1e-12);
}

struct Direct {
  std::vector<double> c;      // (K + diag(reg))^-1
  std::vector<double> gamma;  // c d
};

Direct direct_solution(const std::vector<std::vector<double>>& xs, const std::vector<double>& d,
                       const std::vector<double>& reg, double sigma) {
  const std::size_t n = xs.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = kernel_oracle(xs[i], xs[j], sigma);
    a[i * n + i] += reg[i];
  }
  Direct out;
  out.c = oracle::inverse(a, n);
  out.gamma.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.gamma[i] += out.c[i * n + j] * d[j];
  }
  return out;
}

}  // namespace

TEST(MercerKernel, Basics) {
  const std::vector<double> x{0.3, -1.0}, y{0.3 + std::sqrt(2.0), -1.0};
  EXPECT_EQ(mercer_kernel(x, x, 1.0), 1.0);
  EXPECT_NEAR(mercer_kernel(x, y, 1.0), std::exp(-1.0), 1e-15);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto a = oracle::normals(3, rng), b = oracle::normals(3, rng);
    EXPECT_EQ(mercer_kernel(a, b, 0.7), mercer_kernel(b, a, 0.7));
  }
  EXPECT_THROW(mercer_kernel(x, std::vector<double>{1.0}, 1.0), ShapeError);
  EXPECT_THROW(mercer_kernel(x, x, 0.0), ParameterError);
}

TEST(KrInit, InitialConstants) {
  KernelConfig cfg;
  cfg.mix = FiducialMix(1.0, GgdParams(2.0, 1.0), GgdParams(1.0, 20.0));
  cfg.zeta1 = 1.0;
  const std::vector<double> x{0.5};
  const auto m = kr_init({x, 6.0}, cfg);
  EXPECT_NEAR(m.c_matrix()[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.gamma()[0], 2.0, 1e-15);

  cfg.mix = FiducialMix(0.8, GgdParams(2.0, 10.0), GgdParams(1.0, 20.0));
  cfg.zeta1 = 0.1;
  const auto m2 = kr_init({x, 1.0}, cfg);
  EXPECT_NEAR(m2.c_matrix()[0], 1.0 / (1.0 + 0.1 * (0.8 * 2.0 / 100.0 + 2 * 0.2 * 1.0 / 20.0)), 1e-15);
  cfg.zeta1 = 1e-14;
  EXPECT_NEAR(kr_init({x, 3.0}, cfg).gamma()[0], 3.0, 1e-12);

  cfg.zeta1 = 0.0;
  EXPECT_THROW(kr_init({x, 1.0}, cfg), ParameterError);
  cfg.zeta1 = 0.1;
  cfg.sigma = -1.0;
  EXPECT_THROW(kr_init({x, 1.0}, cfg), ParameterError);
}

TEST(KrPredict, KernelExpansion) {
  KernelConfig cfg;
  cfg.zeta1 = 1e-3;
  cfg.sigma = 0.8;
  std::mt19937_64 rng(2);
  std::vector<std::vector<double>> xs;
  auto x0 = oracle::normals(3, rng);
  auto m = kr_init({x0, 1.0}, cfg);
  xs.push_back(x0);
  for (int i = 0; i < 4; ++i) {
    xs.push_back(oracle::normals(3, rng));
    kr_update(m, {xs.back(), oracle::normals(1, rng)[0]});
  }
  for (int t = 0; t < 20; ++t) {
    const auto q = oracle::normals(3, rng);
    double ref = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) ref += m.gamma()[i] * kernel_oracle(q, xs[i], 0.8);
    EXPECT_NEAR(kr_predict(m, q), ref, 1e-12);
  }
  EXPECT_THROW(kr_predict(m, std::vector<double>{1.0}), ShapeError);
}

TEST(KrUpdate, RecursionMatchesDirectInverse) {
  std::mt19937_64 rng(3);
  for (double lam : {0.0, 0.3, 0.8, 1.0}) {
    KernelConfig cfg;
    cfg.mix = FiducialMix(lam, GgdParams(2.0, 1.0), GgdParams(1.5, 2.0));
    cfg.zeta1 = 0.05;
    cfg.sigma = 1.2;
    std::vector<std::vector<double>> xs{oracle::normals(4, rng)};
    std::vector<double> d{oracle::normals(1, rng)[0]};
    auto m = kr_init({xs[0], d[0]}, cfg);
    std::vector<double> reg{0.05 * (lam * 2.0 / 1.0 + 2 * (1 - lam) * 1.5 / std::pow(2.0, 1.5))};
    std::vector<double> errs{d[0]};
    for (int step = 0; step < 20; ++step) {
      xs.push_back(oracle::normals(4, rng));
      d.push_back(oracle::normals(1, rng)[0]);
      const double e = kr_update(m, {xs.back(), d.back()});
      // a-priori error from the previous direct solution
      const auto prev = direct_solution({xs.begin(), xs.end() - 1}, {d.begin(), d.end() - 1}, reg, 1.2);
      double pred = 0.0;
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) pred += prev.gamma[i] * kernel_oracle(xs.back(), xs[i], 1.2);
      EXPECT_NEAR(e, d.back() - pred, 1e-8);
      reg.push_back(0.05 / psi_oracle(e, errs, lam, 2.0, 1.0, 1.5, 2.0));
      errs.push_back(e);
    }
    ASSERT_EQ(m.size(), 21u);
    const auto ref = direct_solution(xs, d, reg, 1.2);
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n * n; ++i) {
      EXPECT_NEAR(m.c_matrix()[i], ref.c[i], 1e-8 * (1 + std::abs(ref.c[i]))) << "lambda " << lam;
    }
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(m.gamma()[i], ref.gamma[i], 1e-8 * (1 + std::abs(ref.gamma[i])));
      EXPECT_NEAR(m.regularizers()[i], reg[i], 1e-12 * reg[i]);
    }
    for (int t = 0; t < 10; ++t) {
      const auto q = oracle::normals(4, rng);
      double y = 0.0;
      for (std::size_t i = 0; i < n; ++i) y += ref.gamma[i] * kernel_oracle(q, xs[i], 1.2);
      EXPECT_NEAR(kr_predict(m, q), y, 1e-8);
    }
  }
}

TEST(KrUpdate, ZeroErrorAppendsZeroCoefficient) {
  KernelConfig cfg;
  const std::vector<double> x1{0.0}, x2{1.0};
  auto m = kr_init({x1, 1.0}, cfg);
  const std::vector<double> before(m.gamma().begin(), m.gamma().end());
  const double target = kr_predict(m, x2);
  EXPECT_EQ(kr_update(m, {x2, target}), 0.0);
  EXPECT_EQ(m.gamma()[0], before[0]);
  EXPECT_EQ(m.gamma()[1], 0.0);
}

TEST(KrUpdate, InterpolatesSeenPointsWithTinyRegularizer) {
  KernelConfig cfg;
  cfg.zeta1 = 1e-12;
  cfg.sigma = 1.0;
  const std::vector<double> c{0.2, -0.1};
  auto truth = [&](const std::vector<double>& x) { return 1.5 * kernel_oracle(x, c, 1.0); };
  std::mt19937_64 rng(4);
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < 8; ++i) xs.push_back(oracle::normals(2, rng));
  auto m = kr_init({xs[0], truth(xs[0])}, cfg);
  for (std::size_t i = 1; i < xs.size(); ++i) kr_update(m, {xs[i], truth(xs[i])});
  for (const auto& x : xs) EXPECT_NEAR(kr_predict(m, x), truth(x), 1e-6);
}

TEST(KrUpdate, DuplicateInputIsRejectedAndModelUnchanged) {
  KernelConfig cfg;
  cfg.zeta1 = 1e-300;
  const std::vector<double> x{0.5, 0.5};
  auto m = kr_init({x, 1.0}, cfg);
  kr_update(m, {std::vector<double>{3.0, 3.0}, 0.2});
  const std::vector<double> c(m.c_matrix().begin(), m.c_matrix().end());
  EXPECT_THROW(kr_update(m, {x, 1.0}), IllConditionedUpdate);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(std::vector<double>(m.c_matrix().begin(), m.c_matrix().end()), c);
}

TEST(KrPsi, LambdaLimitsReduceToSingleTerms) {
  const std::vector<double> prev{0.3, -0.2, 1.1};
  const GgdParams p1(2.0, 1.0), p2(1.5, 2.0);
  EXPECT_NEAR(kr_psi(0.4, prev, FiducialMix(1.0, p1, p2)), psi_oracle(0.4, {}, 1.0, 2, 1, 1.5, 2) * 1.0 / 4.0 * 1.0,
              1e-15);
  EXPECT_NEAR(kr_psi(0.4, prev, FiducialMix(0.0, p1, p2)), psi_oracle(0.4, prev, 0.0, 2, 1, 1.5, 2), 1e-15);
  // zero error with alpha < 2: floored, finite
  EXPECT_TRUE(std::isfinite(kr_psi(0.0, std::vector<double>{0.0}, FiducialMix(0.5, GgdParams(1.0, 1.0), p2))));
}

TEST(KernelCsv, Header) {
  KernelConfig cfg;
  const std::vector<double> x{1.0, 2.0};
  auto m = kr_init({x, 0.0}, cfg);
  std::ostringstream out;
  write_kernel_csv(out, m);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "index,gamma,x0,x1");
}
