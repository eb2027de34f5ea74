// AVX2 + FMA kernels. Compiled with -mavx2 -mfma and only reached through the
// runtime dispatch table, so nothing here may be called on a CPU without those
// extensions. Avoid std:: inline templates in this file: their COMDAT copies
// would be built with the wider ISA and could be picked by the linker for the
// baseline translation units.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "ggd_scalar_ops.hpp"
#include "kernel_table.hpp"

namespace gmeef::simd::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d vabs(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

// sign(x) in {-1, 0, +1}
inline __m256d vsign(__m256d x) {
  const __m256d one = _mm256_or_pd(_mm256_and_pd(x, _mm256_set1_pd(-0.0)), _mm256_set1_pd(1.0));
  const __m256d nonzero = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_NEQ_OQ);
  return _mm256_and_pd(one, nonzero);
}

// exp(x): Cody-Waite reduction by ln 2 and the Cephes rational approximation
// on [-ln2/2, ln2/2]. Inputs below -708 flush to zero.
inline __m256d vexp(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-708.0);
  const __m256d hi = _mm256_set1_pd(709.0);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634073599)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000009E0));
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

  // 2^n built directly in the exponent field; n + 1023 lies in [1, 2046].
  const __m256d shifted = _mm256_add_pd(n, _mm256_set1_pd(6755399441055744.0 + 1023.0));
  const __m256i bits = _mm256_slli_epi64(_mm256_castpd_si256(shifted), 52);
  e = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));
  return _mm256_andnot_pd(underflow, e);
}

// log(x) for positive normal x (Cephes log.c rational form).
inline __m256d vlog(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i half_exp = _mm256_set1_epi64x(0x3FE0000000000000LL);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), half_exp));

  const __m256i exp_field = _mm256_srli_epi64(bits, 52);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_field, magic)),
                            _mm256_set1_pd(4503599627370496.0 + 1022.0));

  const __m256d below = _mm256_cmp_pd(m, _mm256_set1_pd(0.70710678118654752440), _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(below, _mm256_set1_pd(1.0)));
  m = _mm256_sub_pd(_mm256_add_pd(m, _mm256_and_pd(below, m)), _mm256_set1_pd(1.0));

  const __m256d z = _mm256_mul_pd(m, m);
  __m256d p = _mm256_set1_pd(1.01875663804580931796E-4);
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(4.97494994976747001425E-1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(4.70579119878881725854E0));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(1.44989225341610930846E1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(1.79368678507819816313E1));
  p = _mm256_fmadd_pd(p, m, _mm256_set1_pd(7.70838733755885391666E0));
  __m256d q = _mm256_add_pd(m, _mm256_set1_pd(1.12873587189167450590E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(4.52279145837532221105E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(8.29875266912776603211E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(7.11544750618563894466E1));
  q = _mm256_fmadd_pd(q, m, _mm256_set1_pd(2.31251620126765340583E1));

  __m256d y = _mm256_mul_pd(m, _mm256_div_pd(_mm256_mul_pd(z, p), q));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5), y);
  __m256d r = _mm256_add_pd(m, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
}

// u^alpha for u >= 0.
inline __m256d vpower(__m256d u, const GgdShape& s) {
  switch (s.kind) {
    case GgdShape::Kind::laplacian: return u;
    case GgdShape::Kind::gaussian: return _mm256_mul_pd(u, u);
    case GgdShape::Kind::general: break;
  }
  const __m256d zero = _mm256_setzero_pd();
  const __m256d is_zero = _mm256_cmp_pd(u, zero, _CMP_EQ_OQ);
  const __m256d safe = _mm256_blendv_pd(u, _mm256_set1_pd(1.0), is_zero);
  const __m256d p = vexp(_mm256_mul_pd(_mm256_set1_pd(s.alpha), vlog(safe)));
  return _mm256_blendv_pd(p, zero, is_zero);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void exp_inplace_avx2(double* v, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(v + i, vexp(_mm256_loadu_pd(v + i)));
  for (; i < n; ++i) v[i] = std::exp(v[i]);
}

double ggd_sum_avx2(double center, const double* points, const double* weights, std::size_t n,
                    const GgdShape& shape) {
  const __m256d c = _mm256_set1_pd(center);
  const __m256d inv_beta = _mm256_set1_pd(shape.inv_beta);
  const __m256d norm = _mm256_set1_pd(shape.norm);
  __m256d acc = _mm256_setzero_pd();
  std::size_t h = 0;
  for (; h + 4 <= n; h += 4) {
    const __m256d u = _mm256_mul_pd(vabs(_mm256_sub_pd(c, _mm256_loadu_pd(points + h))), inv_beta);
    __m256d g = _mm256_mul_pd(norm, vexp(_mm256_sub_pd(_mm256_setzero_pd(), vpower(u, shape))));
    if (weights) g = _mm256_mul_pd(g, _mm256_loadu_pd(weights + h));
    acc = _mm256_add_pd(acc, g);
  }
  double s = hsum(acc);
  for (; h < n; ++h) {
    const double g = ggd_value(center - points[h], shape);
    s += weights ? weights[h] * g : g;
  }
  return s;
}

double ggd_score_sum_avx2(double center, const double* points, const double* weights,
                          double* column_acc, std::size_t n, const GgdShape& shape) {
  const __m256d c = _mm256_set1_pd(center);
  const __m256d inv_beta = _mm256_set1_pd(shape.inv_beta);
  const __m256d neg_scale = _mm256_set1_pd(-shape.score_scale);
  const __m256d min_u = _mm256_set1_pd(shape.min_u);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t h = 0;
  for (; h + 4 <= n; h += 4) {
    const __m256d d = _mm256_sub_pd(c, _mm256_loadu_pd(points + h));
    const __m256d sign = vsign(d);
    const __m256d u = _mm256_mul_pd(vabs(d), inv_beta);
    __m256d g;
    switch (shape.kind) {
      case GgdShape::Kind::laplacian:
        g = vexp(_mm256_sub_pd(zero, u));
        break;
      case GgdShape::Kind::gaussian:
        g = _mm256_mul_pd(vexp(_mm256_sub_pd(zero, _mm256_mul_pd(u, u))), u);
        break;
      default: {
        const __m256d uc = _mm256_max_pd(u, min_u);
        const __m256d p = vexp(_mm256_mul_pd(_mm256_set1_pd(shape.alpha), vlog(uc)));
        g = _mm256_mul_pd(vexp(_mm256_sub_pd(zero, p)), _mm256_div_pd(p, uc));
        break;
      }
    }
    g = _mm256_mul_pd(_mm256_mul_pd(neg_scale, g), sign);
    if (weights) g = _mm256_mul_pd(g, _mm256_loadu_pd(weights + h));
    acc = _mm256_add_pd(acc, g);
    if (column_acc) {
      _mm256_storeu_pd(column_acc + h, _mm256_add_pd(_mm256_loadu_pd(column_acc + h), g));
    }
  }
  double s = hsum(acc);
  for (; h < n; ++h) {
    double g = ggd_score(center - points[h], shape);
    if (weights) g *= weights[h];
    s += g;
    if (column_acc) column_acc[h] += g;
  }
  return s;
}

void gemv_avx2(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
               const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot_avx2(a + r * lda, x, cols);
}

void gemv_t_add_avx2(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                     const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) axpy_avx2(x[r], a + r * lda, y, cols);
}

void rank1_update_avx2(double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                       double alpha, const double* u, const double* v) {
  for (std::size_t r = 0; r < rows; ++r) axpy_avx2(alpha * u[r], v, a + r * lda, cols);
}

constexpr KernelTable kAvx2{
    dot_avx2,         axpy_avx2,          squared_distance_avx2,
    exp_inplace_avx2, ggd_sum_avx2,       ggd_score_sum_avx2,
    gemv_avx2,        gemv_t_add_avx2,    rank1_update_avx2,
};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace gmeef::simd::detail
