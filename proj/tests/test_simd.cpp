#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gmeef/criterion.hpp"
#include "gmeef/simd.hpp"
#include "oracles.hpp"

using namespace gmeef;
using simd::Backend;

namespace {

bool have_avx2() { return simd::backend_available(Backend::avx2); }

template <class F>
auto on(Backend b, F&& f) {
  simd::ScopedBackend guard(b);
  return f();
}

const std::vector<std::size_t> kSizes{0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 67, 130};

}  // namespace

TEST(Simd, ScalarAlwaysAvailable) {
  EXPECT_TRUE(simd::backend_available(Backend::scalar));
  simd::ScopedBackend g(Backend::scalar);
  EXPECT_EQ(simd::active_backend(), Backend::scalar);
}

TEST(Simd, ScalarMatchesNaiveLoops) {
  simd::ScopedBackend g(Backend::scalar);
  std::mt19937_64 rng(3);
  for (std::size_t n : kSizes) {
    auto a = oracle::normals(n, rng);
    auto b = oracle::normals(n, rng);
    double dot = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += a[i] * b[i];
      sq += (a[i] - b[i]) * (a[i] - b[i]);
    }
    EXPECT_NEAR(simd::dot(a, b), dot, 1e-12 * (1.0 + n));
    EXPECT_NEAR(simd::squared_distance(a, b), sq, 1e-12 * (1.0 + sq));
  }
}

TEST(Simd, SizeMismatchThrows) {
  std::vector<double> a(3), b(4);
  EXPECT_THROW(simd::dot(a, b), std::invalid_argument);
  EXPECT_THROW(simd::axpy(1.0, a, b), std::invalid_argument);
}

TEST(Simd, Avx2MatchesScalarBlas) {
  if (!have_avx2()) GTEST_SKIP() << "no AVX2 on this host";
  std::mt19937_64 rng(11);
  for (std::size_t n : kSizes) {
    const auto a = oracle::normals(n, rng);
    const auto b = oracle::normals(n, rng);
    const double scale = 1.0 + static_cast<double>(n);
    EXPECT_NEAR(on(Backend::scalar, [&] { return simd::dot(a, b); }),
                on(Backend::avx2, [&] { return simd::dot(a, b); }), 1e-13 * scale);
    EXPECT_NEAR(on(Backend::scalar, [&] { return simd::squared_distance(a, b); }),
                on(Backend::avx2, [&] { return simd::squared_distance(a, b); }), 1e-13 * scale);
    auto y1 = b, y2 = b;
    on(Backend::scalar, [&] { simd::axpy(0.37, a, y1); return 0; });
    on(Backend::avx2, [&] { simd::axpy(0.37, a, y2); return 0; });
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15 * (1 + std::abs(y1[i])));

    auto v1 = oracle::normals(n, rng, 5.0);
    auto v2 = v1;
    on(Backend::scalar, [&] { simd::exp_inplace(v1); return 0; });
    on(Backend::avx2, [&] { simd::exp_inplace(v2); return 0; });
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(oracle::rel_err(v1[i], v2[i], 1e-300), 1e-14);
  }
}

TEST(Simd, Avx2MatchesScalarMatrixKernels) {
  if (!have_avx2()) GTEST_SKIP() << "no AVX2 on this host";
  std::mt19937_64 rng(12);
  for (std::size_t rows : {1u, 3u, 8u, 13u}) {
    for (std::size_t cols : {1u, 4u, 5u, 17u, 32u}) {
      const std::size_t lda = cols + 2;
      const auto a = oracle::normals(rows * lda, rng);
      const auto x = oracle::normals(cols, rng);
      const auto xt = oracle::normals(rows, rng);
      std::vector<double> y1(rows), y2(rows);
      on(Backend::scalar, [&] { simd::gemv(a.data(), rows, cols, lda, x, y1); return 0; });
      on(Backend::avx2, [&] { simd::gemv(a.data(), rows, cols, lda, x, y2); return 0; });
      for (std::size_t i = 0; i < rows; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-12);

      std::vector<double> t1(cols, 1.0), t2(cols, 1.0);
      on(Backend::scalar, [&] { simd::gemv_t_add(a.data(), rows, cols, lda, xt, t1); return 0; });
      on(Backend::avx2, [&] { simd::gemv_t_add(a.data(), rows, cols, lda, xt, t2); return 0; });
      for (std::size_t i = 0; i < cols; ++i) EXPECT_NEAR(t1[i], t2[i], 1e-12);

      auto m1 = a, m2 = a;
      on(Backend::scalar, [&] { simd::rank1_update(m1.data(), lda, -0.5, xt, x); return 0; });
      on(Backend::avx2, [&] { simd::rank1_update(m2.data(), lda, -0.5, xt, x); return 0; });
      for (std::size_t i = 0; i < m1.size(); ++i) EXPECT_NEAR(m1[i], m2[i], 1e-14);
    }
  }
}

class SimdGgd : public ::testing::TestWithParam<double> {};

TEST_P(SimdGgd, Avx2MatchesScalarKernelSums) {
  if (!have_avx2()) GTEST_SKIP() << "no AVX2 on this host";
  const double alpha = GetParam();
  const GgdParams p(alpha, 1.3);
  std::mt19937_64 rng(static_cast<std::uint64_t>(alpha * 1000));
  std::uniform_real_distribution<double> pos(0.0, 3.0);
  for (std::size_t n : kSizes) {
    auto pts = oracle::normals(n, rng, 2.0);
    if (n > 3) pts[2] = 0.25;  // a point exactly at the center
    std::vector<double> w(n);
    for (double& v : w) v = pos(rng);
    const double c = 0.25;
    double wsum = 0.0;
    for (double v : w) wsum += v;
    const double tol = 1e-12 * p.norm() * (1.0 + wsum) * (1.0 + p.chain_constant());

    for (const auto& weights : {std::vector<double>{}, w}) {
      EXPECT_NEAR(on(Backend::scalar, [&] { return simd::ggd_sum(c, pts, weights, p.shape()); }),
                  on(Backend::avx2, [&] { return simd::ggd_sum(c, pts, weights, p.shape()); }), tol);
      std::vector<double> acc1(n, 0.5), acc2(n, 0.5);
      const double s1 =
          on(Backend::scalar, [&] { return simd::ggd_score_sum(c, pts, weights, acc1, p.shape()); });
      const double s2 =
          on(Backend::avx2, [&] { return simd::ggd_score_sum(c, pts, weights, acc2, p.shape()); });
      EXPECT_NEAR(s1, s2, tol);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(acc1[i], acc2[i], tol);
      EXPECT_NEAR(s1, on(Backend::avx2, [&] { return simd::ggd_score_sum(c, pts, weights, {}, p.shape()); }),
                  tol);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, SimdGgd, ::testing::Values(1.0, 1.5, 2.0, 2.5, 3.5));

TEST(Simd, GgdSumMatchesDensityOracle) {
  std::mt19937_64 rng(5);
  for (double alpha : {1.0, 2.0, 2.5}) {
    const GgdParams p(alpha, 0.8);
    const auto pts = oracle::normals(23, rng);
    double ref = 0.0;
    for (double v : pts) ref += oracle::ggd(0.1 - v, alpha, 0.8);
    for (Backend b : {Backend::scalar, Backend::avx2}) {
      if (!simd::backend_available(b)) continue;
      EXPECT_NEAR(on(b, [&] { return simd::ggd_sum(0.1, pts, {}, p.shape()); }), ref, 1e-12);
    }
  }
}
