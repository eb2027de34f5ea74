// Scalar reference kernels. These define the semantics the vector variants
// are tested against.

#include <algorithm>
#include <cmath>

#include "ggd_scalar_ops.hpp"
#include "kernel_table.hpp"

namespace gmeef::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void exp_inplace_scalar(double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(v[i]);
}

double ggd_sum_scalar(double center, const double* points, const double* weights,
                      std::size_t n, const GgdShape& shape) {
  double s = 0.0;
  if (weights) {
    for (std::size_t h = 0; h < n; ++h) s += weights[h] * ggd_value(center - points[h], shape);
  } else {
    for (std::size_t h = 0; h < n; ++h) s += ggd_value(center - points[h], shape);
  }
  return s;
}

double ggd_score_sum_scalar(double center, const double* points, const double* weights,
                            double* column_acc, std::size_t n, const GgdShape& shape) {
  double s = 0.0;
  for (std::size_t h = 0; h < n; ++h) {
    double g = ggd_score(center - points[h], shape);
    if (weights) g *= weights[h];
    s += g;
    if (column_acc) column_acc[h] += g;
  }
  return s;
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                 const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_scalar(a + r * lda, x, cols);
}

void gemv_t_add_scalar(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                       const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) axpy_scalar(x[r], a + r * lda, y, cols);
}

void rank1_update_scalar(double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                         double alpha, const double* u, const double* v) {
  for (std::size_t r = 0; r < rows; ++r) axpy_scalar(alpha * u[r], v, a + r * lda, cols);
}

constexpr KernelTable kScalar{
    dot_scalar,         axpy_scalar,          squared_distance_scalar,
    exp_inplace_scalar, ggd_sum_scalar,       ggd_score_sum_scalar,
    gemv_scalar,        gemv_t_add_scalar,    rank1_update_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace gmeef::simd::detail
