#include "grnn/bp.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <string>

namespace grnn::bp {

namespace {

bool finite_span(std::span<const double> v) {
  for (double a : v) {
    if (!std::isfinite(a)) return false;
  }
  return true;
}

void check_shapes(const Network& net, std::span<const double> x) {
  if (x.size() != net.input_dim()) {
    throw DimensionError("network expects " + std::to_string(net.input_dim()) + " inputs, got " +
                         std::to_string(x.size()));
  }
}

void hidden_activations(const Network& net, std::span<const double> x, Vector& h) {
  h.resize(net.hidden());
  for (std::size_t i = 0; i < net.hidden(); ++i) {
    double a = net.b1[i];
    const auto wi = net.w1.row(i);
    for (std::size_t k = 0; k < x.size(); ++k) a += wi[k] * x[k];
    h[i] = std::tanh(a);
  }
}

void output_layer(const Network& net, const Vector& h, Vector& y) {
  y.resize(net.output_dim());
  for (std::size_t j = 0; j < net.output_dim(); ++j) {
    double a = net.b2[j];
    const auto wj = net.w2.row(j);
    for (std::size_t i = 0; i < h.size(); ++i) a += wj[i] * h[i];
    y[j] = a;
  }
}

// Adds scale * d(sum_j (y_j - t_j)^2)/dparams into acc; returns the sample's squared error.
double accumulate_gradient(const Network& net, std::span<const double> x,
                           std::span<const double> t, double scale, Gradients& acc,
                           Vector& h, Vector& y, Vector& delta_h) {
  hidden_activations(net, x, h);
  output_layer(net, h, y);
  double sq = 0.0;
  delta_h.assign(net.hidden(), 0.0);
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double e = y[j] - t[j];
    sq += e * e;
    const double g = 2.0 * e;
    acc.b2[j] += scale * g;
    auto gw2 = acc.w2.row(j);
    const auto w2j = net.w2.row(j);
    for (std::size_t i = 0; i < h.size(); ++i) {
      gw2[i] += scale * g * h[i];
      delta_h[i] += g * w2j[i];
    }
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double g = delta_h[i] * (1.0 - h[i] * h[i]);
    acc.b1[i] += scale * g;
    auto gw1 = acc.w1.row(i);
    for (std::size_t k = 0; k < x.size(); ++k) gw1[k] += scale * g * x[k];
  }
  return sq;
}

void check_batch(const Network& net, const Matrix& inputs, const Matrix& targets) {
  if (inputs.rows() != targets.rows()) throw DimensionError("input/target row counts differ");
  if (inputs.empty()) throw InvalidArgument("empty training set");
  if (inputs.cols() != net.input_dim() || targets.cols() != net.output_dim()) {
    throw DimensionError("dataset shape does not match network");
  }
}

}  // namespace

std::size_t Network::parameter_count() const noexcept {
  return w1.flat().size() + b1.size() + w2.flat().size() + b2.size();
}

bool Network::all_finite() const noexcept {
  return finite_span(w1.flat()) && finite_span(b1) && finite_span(w2.flat()) && finite_span(b2);
}

Network zeros(std::size_t d_in, std::size_t hidden, std::size_t d_out) {
  if (d_in == 0 || hidden == 0 || d_out == 0) {
    throw InvalidArgument("network sizes must be positive");
  }
  return {Matrix(hidden, d_in), Vector(hidden, 0.0), Matrix(d_out, hidden), Vector(d_out, 0.0)};
}

Network init_network(std::size_t d_in, std::size_t hidden, std::size_t d_out, std::uint64_t seed) {
  Network net = zeros(d_in, hidden, d_out);
  std::mt19937_64 rng(seed);
  auto fill = [&rng](std::span<double> values, std::size_t fan_in) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& v : values) v = dist(rng);
  };
  fill(net.w1.flat(), d_in);
  fill(net.b1, d_in);
  fill(net.w2.flat(), hidden);
  fill(net.b2, hidden);
  return net;
}

Vector forward(const Network& net, std::span<const double> x) {
  check_shapes(net, x);
  Vector h, y;
  hidden_activations(net, x, h);
  output_layer(net, h, y);
  return y;
}

Gradients gradients(const Network& net, std::span<const double> x, std::span<const double> t) {
  check_shapes(net, x);
  if (t.size() != net.output_dim()) throw DimensionError("target width does not match network");
  Gradients g = zeros(net.input_dim(), net.hidden(), net.output_dim());
  Vector h, y, dh;
  accumulate_gradient(net, x, t, 1.0, g, h, y, dh);
  return g;
}

Matrix predict_batch(const Network& net, const Matrix& inputs) {
  if (inputs.cols() != net.input_dim()) throw DimensionError("dataset shape does not match network");
  Matrix out(inputs.rows(), net.output_dim());
  Vector h, y;
  for (std::size_t r = 0; r < inputs.rows(); ++r) {
    hidden_activations(net, inputs.row(r), h);
    output_layer(net, h, y);
    std::copy(y.begin(), y.end(), out.row(r).begin());
  }
  return out;
}

double batch_mse(const Network& net, const Matrix& inputs, const Matrix& targets) {
  check_batch(net, inputs, targets);
  const Matrix pred = predict_batch(net, inputs);
  double sum = 0.0;
  const auto p = pred.flat();
  const auto t = targets.flat();
  for (std::size_t i = 0; i < p.size(); ++i) sum += (p[i] - t[i]) * (p[i] - t[i]);
  return sum / static_cast<double>(p.size());
}

std::pair<Network, TrainReport> train(Network net, const Matrix& inputs, const Matrix& targets,
                                      const TrainOptions& options) {
  check_batch(net, inputs, targets);
  if (options.epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (!(options.learning_rate > 0.0) || !std::isfinite(options.learning_rate)) {
    throw InvalidArgument("learning rate must be positive");
  }

  TrainReport report;
  report.mse_history.reserve(options.epochs);
  const double count = static_cast<double>(inputs.rows() * targets.cols());
  const double scale = 1.0 / count;
  Gradients grad = zeros(net.input_dim(), net.hidden(), net.output_dim());
  Vector h, y, dh;

  auto apply = [lr = options.learning_rate](std::span<double> p, std::span<const double> g) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= lr * g[i];
  };

  const auto start = std::chrono::steady_clock::now();
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::fill(grad.w1.flat().begin(), grad.w1.flat().end(), 0.0);
    std::fill(grad.b1.begin(), grad.b1.end(), 0.0);
    std::fill(grad.w2.flat().begin(), grad.w2.flat().end(), 0.0);
    std::fill(grad.b2.begin(), grad.b2.end(), 0.0);

    double sq = 0.0;
    for (std::size_t r = 0; r < inputs.rows(); ++r) {
      sq += accumulate_gradient(net, inputs.row(r), targets.row(r), scale, grad, h, y, dh);
    }
    const double epoch_mse = sq / count;
    if (!std::isfinite(epoch_mse)) {
      throw DivergenceError("training diverged at epoch " + std::to_string(epoch + 1), epoch + 1);
    }
    report.mse_history.push_back(epoch_mse);

    apply(net.w1.flat(), grad.w1.flat());
    apply(net.b1, grad.b1);
    apply(net.w2.flat(), grad.w2.flat());
    apply(net.b2, grad.b2);
    if (!net.all_finite()) {
      throw DivergenceError("parameters became non-finite at epoch " + std::to_string(epoch + 1),
                            epoch + 1);
    }
    ++report.epochs_run;
  }
  report.final_mse = batch_mse(net, inputs, targets);
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!std::isfinite(report.final_mse)) {
    throw DivergenceError("training diverged after epoch " + std::to_string(options.epochs),
                          options.epochs);
  }
  return {std::move(net), std::move(report)};
}

std::pair<Network, TrainReport> train(std::size_t hidden, const Matrix& inputs,
                                      const Matrix& targets, const TrainOptions& options,
                                      std::uint64_t seed) {
  return train(init_network(inputs.cols(), hidden, targets.cols(), seed), inputs, targets, options);
}

}  // namespace grnn::bp
