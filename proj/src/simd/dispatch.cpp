#include <atomic>
#include <stdexcept>
#include <string>

#include "gmeef/simd.hpp"
#include "kernel_table.hpp"

namespace gmeef::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(GMEEF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() noexcept { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

const detail::KernelTable& table() noexcept {
#if defined(GMEEF_HAVE_AVX2)
  if (current().load(std::memory_order_relaxed) == Backend::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": size mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) noexcept {
  return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("SIMD backend '" + std::string(backend_name(b)) +
                                "' is not available on this CPU");
  }
  current().store(b, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "dot");
  return table().dot(a.data(), b.data(), a.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size(), "axpy");
  table().axpy(a, x.data(), y.data(), x.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "squared_distance");
  return table().squared_distance(a.data(), b.data(), a.size());
}

void exp_inplace(std::span<double> v) { table().exp_inplace(v.data(), v.size()); }

double ggd_sum(double center, std::span<const double> points, std::span<const double> weights,
               const GgdShape& shape) {
  if (!weights.empty()) require_same_size(points.size(), weights.size(), "ggd_sum");
  return table().ggd_sum(center, points.data(), weights.empty() ? nullptr : weights.data(),
                         points.size(), shape);
}

double ggd_score_sum(double center, std::span<const double> points,
                     std::span<const double> weights, std::span<double> column_acc,
                     const GgdShape& shape) {
  if (!weights.empty()) require_same_size(points.size(), weights.size(), "ggd_score_sum");
  if (!column_acc.empty()) require_same_size(points.size(), column_acc.size(), "ggd_score_sum");
  return table().ggd_score_sum(center, points.data(), weights.empty() ? nullptr : weights.data(),
                               column_acc.empty() ? nullptr : column_acc.data(), points.size(),
                               shape);
}

void gemv(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
          std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), cols, "gemv");
  require_same_size(y.size(), rows, "gemv");
  table().gemv(a, rows, cols, lda, x.data(), y.data());
}

void gemv_t_add(const double* a, std::size_t rows, std::size_t cols, std::size_t lda,
                std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), rows, "gemv_t_add");
  require_same_size(y.size(), cols, "gemv_t_add");
  table().gemv_t_add(a, rows, cols, lda, x.data(), y.data());
}

void rank1_update(double* a, std::size_t lda, double alpha, std::span<const double> u,
                  std::span<const double> v) {
  table().rank1_update(a, u.size(), v.size(), lda, alpha, u.data(), v.data());
}

}  // namespace gmeef::simd
