#include "gmeef/quantizer.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "gmeef/error.hpp"
#include "gmeef/format.hpp"

namespace gmeef {

Codebook::Codebook(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("quantization threshold epsilon must be finite and >= 0, got " +
                         std::to_string(epsilon));
  }
}

Codebook::Assignment Codebook::quantize(double sample) {
  if (!std::isfinite(sample)) {
    throw ParameterError("cannot quantize a non-finite sample");
  }
  ++seen_;
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < codes_.size(); ++h) {
    const double d = std::abs(sample - codes_[h]);
    if (d < best_dist) {  // strict: the lowest index wins ties
      best_dist = d;
      best = h;
    }
  }
  if (!codes_.empty() && best_dist <= epsilon_) {
    ++counts_[best];
    return {codes_[best], best, false};
  }
  codes_.push_back(sample);
  counts_.push_back(1);
  return {sample, codes_.size() - 1, true};
}

void Codebook::reset() noexcept {
  codes_.clear();
  counts_.clear();
  seen_ = 0;
}

double h_ave(std::span<const double> trace) {
  if (trace.empty()) throw EmptyInputError("h_ave: empty code-count trace");
  return std::accumulate(trace.begin(), trace.end(), 0.0) / static_cast<double>(trace.size());
}

void write_codebook_csv(std::ostream& out, const Codebook& book) {
  out << "index,code,count\n";
  for (std::size_t h = 0; h < book.size(); ++h) {
    out << h << ',' << format_number(book.codes()[h]) << ',' << book.counts()[h] << '\n';
  }
}

}  // namespace gmeef
