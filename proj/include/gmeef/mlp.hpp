#pragma once

// Fully connected sigmoid network trained by ascent on windowed potentials of
// the per-output-neuron errors e_k = t_k - y_k, or on negated binary
// cross-entropy.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gmeef/criterion.hpp"
#include "gmeef/dataset.hpp"

namespace gmeef {

struct MlpNet {
  std::vector<std::size_t> sizes;  // input, hidden..., output
  // weights[l] is sizes[l+1] x sizes[l], row-major; biases[l] has sizes[l+1].
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  std::size_t layers() const noexcept { return weights.size(); }
  std::size_t inputs() const noexcept { return sizes.front(); }
  std::size_t outputs() const noexcept { return sizes.back(); }
};

/// Zero weights and biases. Throws ParameterError for fewer than two layers
/// or a zero-width layer.
MlpNet mlp_zeros(std::span<const std::size_t> sizes);

/// Uniform in [-r, r], r = sqrt(6 / (fan_in + fan_out)); zero biases.
MlpNet mlp_init(std::span<const std::size_t> sizes, std::uint64_t seed);

/// Activations of every layer; act[0] is the input, act.back() the output.
struct MlpCache {
  std::vector<std::vector<double>> act;
};

double sigmoid(double x) noexcept;

/// Returns the output layer (a view into cache). Throws ShapeError.
std::span<const double> mlp_forward(const MlpNet& net, std::span<const double> x, MlpCache& cache);

enum class CostKind { ce, gmcc, gmee, gmeef };
std::string_view cost_name(CostKind c) noexcept;
/// Throws ConfigError.
CostKind parse_cost(std::string_view name);

/// L samples of (input, target), row-major.
struct PairBatch {
  std::size_t size = 0;
  std::span<const double> inputs;   // size x in
  std::span<const double> targets;  // size x out
};

/// Maximized objective over the batch: sum over output neurons of the
/// potential of that neuron's errors (GMCC uses mix.corr, GMEE mix.ent,
/// GMEEF the mixture), or (1/L) sum [t log y + (1 - t) log(1 - y)] for CE.
double gmeef_pair_cost(const MlpNet& net, const PairBatch& batch, CostKind kind,
                       const FiducialMix& mix);

/// Exact gradient of gmeef_pair_cost over every weight and bias, shaped
/// like the net.
MlpNet cost_gradient(const MlpNet& net, const PairBatch& batch, CostKind kind,
                     const FiducialMix& mix);

/// net += rate * gradient. Throws NumericFailure (iteration = `step`) on a
/// non-finite gradient, leaving the net unchanged.
void gmeef_backprop(MlpNet& net, const PairBatch& batch, CostKind kind, const FiducialMix& mix,
                    double rate, std::size_t step = 0);

/// Fraction of samples whose argmax output equals the label.
double mlp_accuracy(const MlpNet& net, const Dataset& data);

enum class TrainMode { batch, online };

struct TrainConfig {
  CostKind cost = CostKind::gmeef;
  FiducialMix mix{0.8, GgdParams(2.0, 1.5), GgdParams(2.5, 3.0)};
  std::size_t epochs = 50;
  std::size_t window = 10;
  double rate = 0.5;
  TrainMode mode = TrainMode::batch;
  std::uint64_t seed = 1;
};

struct TrainResult {
  MlpNet net;
  // Entry 0 is the untrained net; entry k follows epoch k.
  std::vector<double> train_accuracy;
  std::vector<double> test_accuracy;
};

/// Batch mode: each epoch shuffles the training set and takes one step per
/// window of L samples. Online mode: one step per sample on a sliding
/// window of the last L samples.
TrainResult mlp_train(MlpNet net, const Dataset& train, const Dataset& test, const TrainConfig& cfg);

}  // namespace gmeef
