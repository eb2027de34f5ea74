#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "gmeef/experiments/common.hpp"
#include "gmeef/format.hpp"

namespace gmeef::exp {

FiducialMix AlgorithmSpec::mix() const {
  return FiducialMix(lambda, GgdParams(alpha1, beta1), GgdParams(alpha2, beta2));
}

FilterConfig AlgorithmSpec::filter(std::size_t order) const {
  FilterConfig c;
  c.algorithm = parse_filter_algorithm(type);
  c.order = order;
  c.mu = mu;
  c.window = window;
  c.mix = mix();
  c.convention = convention;
  c.epsilon = epsilon;
  c.count_mode = count_mode;
  return c;
}

KernelConfig AlgorithmSpec::kernel() const {
  KernelConfig c;
  c.mix = mix();
  c.zeta1 = zeta1;
  c.sigma = sigma;
  return c;
}

void write_curves_csv(std::ostream& out, const std::string& metric, const std::vector<Curve>& curves,
                      std::size_t first_index) {
  out << "iteration,algorithm," << metric << '\n';
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      out << first_index + i << ',' << c.name << ',' << format_number(c.values[i]) << '\n';
    }
  }
}

void run_indexed_void(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& job) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min(threads, n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gmeef::exp
