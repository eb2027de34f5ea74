#pragma once

// Online scalar vector quantization of an error stream. A sample within
// epsilon of its nearest code joins that code; otherwise it becomes a new
// code. Codes are never moved or removed.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "gmeef/criterion.hpp"

namespace gmeef {

class Codebook {
 public:
  explicit Codebook(double epsilon);

  double epsilon() const noexcept { return epsilon_; }
  std::size_t size() const noexcept { return codes_.size(); }
  bool empty() const noexcept { return codes_.empty(); }
  std::span<const double> codes() const noexcept { return codes_; }
  std::span<const std::size_t> counts() const noexcept { return counts_; }
  std::size_t samples_seen() const noexcept { return seen_; }

  /// Quantizes one sample; see vq_quantize.
  struct Assignment {
    double value;       // quantized sample (the code it maps to)
    std::size_t index;  // code index
    bool created;       // the sample founded this code
  };
  Assignment quantize(double sample);

  /// Clears codes and counts, keeps epsilon.
  void reset() noexcept;

 private:
  double epsilon_;
  std::vector<double> codes_;
  std::vector<std::size_t> counts_;
  std::size_t seen_ = 0;
};

/// Nearest code within epsilon (ties: lowest index), else a new code. Throws
/// ParameterError for a non-finite sample.
inline Codebook::Assignment vq_quantize(double sample, Codebook& book) { return book.quantize(sample); }

inline void vq_reset(Codebook& book) noexcept { book.reset(); }

/// Arithmetic mean of per-window code counts. Throws EmptyInputError.
double h_ave(std::span<const double> trace);

/// CSV with header "index,code,count".
void write_codebook_csv(std::ostream& out, const Codebook& book);

/// Quantized entropy potential of a window against a codebook whose counts
/// sum to the window length.
inline double qgmee_ip(std::span<const double> errs, const Codebook& book, const GgdParams& p,
                       OpCounter* ops = nullptr) {
  return qgmee_ip(errs, book.codes(), book.counts(), p, ops);
}

}  // namespace gmeef
