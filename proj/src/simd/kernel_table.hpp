#pragma once

#include <cstddef>

#include "gmeef/simd.hpp"

namespace gmeef::simd::detail {

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  void (*exp_inplace)(double* v, std::size_t n);
  double (*ggd_sum)(double center, const double* points, const double* weights,
                    std::size_t n, const GgdShape& shape);
  double (*ggd_score_sum)(double center, const double* points, const double* weights,
                          double* column_acc, std::size_t n, const GgdShape& shape);
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
               const double* x, double* y);
  void (*gemv_t_add)(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                     const double* x, double* y);
  void (*rank1_update)(double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                       double alpha, const double* u, const double* v);
};

const KernelTable& scalar_table() noexcept;

#if defined(GMEEF_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace gmeef::simd::detail
