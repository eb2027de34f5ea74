#pragma once

// Data-parallel inner loops shared by the criteria, filters, kernel machine
// and MLP. Every routine has a scalar reference implementation and, on x86-64
// hosts with AVX2+FMA, a vectorized variant selected at runtime. The two are
// equivalence-tested; they agree to rounding, not bit-for-bit.

#include <cstddef>
#include <span>
#include <string_view>

namespace gmeef::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b) noexcept;
bool backend_available(Backend b) noexcept;
Backend active_backend() noexcept;

// Throws std::invalid_argument when the backend is not available on this CPU.
void set_backend(Backend b);

// Restores the previous backend on scope exit. Not thread-safe; meant for
// tests and the CLI start-up path.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b) : previous_(active_backend()) { set_backend(b); }
  ~ScopedBackend() { set_backend(previous_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend previous_;
};

// Precomputed constants of a generalized Gaussian kernel
//   G(e) = norm * exp(-|e/beta|^alpha)
// and its derivative
//   G'(e) = -score_scale * exp(-u^alpha) * u^(alpha-1) * sign(e),  u = |e|/beta
// with score_scale = norm * alpha / beta.
struct GgdShape {
  enum class Kind { laplacian, gaussian, general };

  Kind kind = Kind::general;
  double alpha = 2.0;
  double inv_beta = 1.0;
  double norm = 0.0;
  double score_scale = 0.0;
  // Lower bound on u inside score computations (|e| >= 1e-12 in error units).
  double min_u = 1e-12;
};

double dot(std::span<const double> a, std::span<const double> b);

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

double squared_distance(std::span<const double> a, std::span<const double> b);

// v[i] <- exp(v[i])
void exp_inplace(std::span<double> v);

// sum_h w_h * G(center - points_h); empty weights means unit weights.
double ggd_sum(double center, std::span<const double> points,
               std::span<const double> weights, const GgdShape& shape);

// sum_h w_h * G'(center - points_h). When column_acc is non-empty it also
// receives column_acc[h] += w_h * G'(center - points_h).
double ggd_score_sum(double center, std::span<const double> points,
                     std::span<const double> weights, std::span<double> column_acc,
                     const GgdShape& shape);

// y = A x for row-major A (rows x cols, leading dimension lda).
void gemv(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
          std::span<const double> x, std::span<double> y);

// y += A^T x for row-major A (rows x cols, leading dimension lda).
void gemv_t_add(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                std::span<const double> x, std::span<double> y);

// A += alpha * u v^T for row-major A (u.size() rows, v.size() cols).
void rank1_update(double* a, std::size_t lda, double alpha, std::span<const double> u,
                  std::span<const double> v);

}  // namespace gmeef::simd
