#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "grnn/types.hpp"

namespace grnn::bp {

/// Single hidden layer feedforward net: y = w2 * tanh(w1 * x + b1) + b2.
struct Network {
  Matrix w1;  ///< hidden x d_in
  Vector b1;  ///< hidden
  Matrix w2;  ///< d_out x hidden
  Vector b2;  ///< d_out

  std::size_t input_dim() const noexcept { return w1.cols(); }
  std::size_t hidden() const noexcept { return w1.rows(); }
  std::size_t output_dim() const noexcept { return w2.rows(); }
  std::size_t parameter_count() const noexcept;
  bool all_finite() const noexcept;

  friend bool operator==(const Network&, const Network&) = default;
};

/// Gradient with the same layout as Network.
using Gradients = Network;

/// Zero-initialized network of the given shape.
Network zeros(std::size_t d_in, std::size_t hidden, std::size_t d_out);

/// Uniform init in [-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer (biases included).
Network init_network(std::size_t d_in, std::size_t hidden, std::size_t d_out, std::uint64_t seed);

Vector forward(const Network& net, std::span<const double> x);

/// Analytic gradient of sum_j (y_j - t_j)^2 for one sample.
Gradients gradients(const Network& net, std::span<const double> x, std::span<const double> t);

/// Mean over rows and outputs of the squared error.
double batch_mse(const Network& net, const Matrix& inputs, const Matrix& targets);
Matrix predict_batch(const Network& net, const Matrix& inputs);

struct TrainOptions {
  std::size_t epochs = 500;
  double learning_rate = 0.05;
};

struct TrainReport {
  double final_mse = 0.0;
  std::size_t epochs_run = 0;
  double wall_time_s = 0.0;
  /// MSE at the start of each epoch, before its update.
  std::vector<double> mse_history;
};

/// Full-batch gradient descent on the row/output averaged MSE. Throws
/// DivergenceError naming the epoch when the loss or a parameter turns
/// non-finite. The clock covers only the epoch loop.
std::pair<Network, TrainReport> train(Network net, const Matrix& inputs, const Matrix& targets,
                                      const TrainOptions& options);

/// init_network(seed) followed by train.
std::pair<Network, TrainReport> train(std::size_t hidden, const Matrix& inputs,
                                      const Matrix& targets, const TrainOptions& options,
                                      std::uint64_t seed);

}  // namespace grnn::bp
