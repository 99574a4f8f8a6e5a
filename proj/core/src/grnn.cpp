#include "grnn/grnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

namespace grnn {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("sigma must be a positive finite number, got " + std::to_string(sigma));
  }
}

}  // namespace

bool NormStats::any_constant() const noexcept {
  return std::find(constant_column.begin(), constant_column.end(), true) != constant_column.end();
}

double squared_distance(std::span<const double> x, std::span<const double> xi) {
  if (x.size() != xi.size()) {
    throw DimensionError("squared_distance: lengths " + std::to_string(x.size()) + " and " +
                         std::to_string(xi.size()) + " differ");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = x[j] - xi[j];
    sum += d * d;
  }
  return sum;
}

Vector normalized_gaussian_weights(std::span<const double> sq_distances, double sigma) {
  if (sq_distances.empty()) throw EmptyModelError("kernel weights requested for an empty store");
  const double d_min = *std::min_element(sq_distances.begin(), sq_distances.end());
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);

  Vector w(sq_distances.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    // the minimal entry maps to exp(0) = 1, so total >= 1
    w[i] = std::exp(-(sq_distances[i] - d_min) * inv_two_sigma_sq);
    total += w[i];
  }
  for (double& wi : w) wi /= total;
  return w;
}

GrnnModel::GrnnModel(std::size_t d_in, std::size_t d_out, double sigma)
    : inputs_(0, d_in), outputs_(0, d_out), sigma_(sigma) {
  if (d_in == 0 || d_out == 0) throw InvalidArgument("GrnnModel: dimensions must be positive");
  check_sigma(sigma);
}

void GrnnModel::set_sigma(double sigma) {
  check_sigma(sigma);
  sigma_ = sigma;
}

void GrnnModel::set_norm_stats(NormStats stats) {
  if (stats.dims() != input_dim() || stats.stddev.size() != input_dim()) {
    throw DimensionError("norm stats cover " + std::to_string(stats.dims()) +
                         " dims, model input has " + std::to_string(input_dim()));
  }
  norm_ = std::move(stats);
}

Pattern GrnnModel::pattern(std::size_t i) const {
  return {to_vector(inputs_.row(i)), to_vector(outputs_.row(i))};
}

void GrnnModel::add_pattern(std::span<const double> x, std::span<const double> y) {
  if (x.size() != input_dim() || y.size() != output_dim()) {
    throw DimensionError("pattern shape (" + std::to_string(x.size()) + "," +
                         std::to_string(y.size()) + ") does not match model (" +
                         std::to_string(input_dim()) + "," + std::to_string(output_dim()) + ")");
  }
  if (!all_finite(x) || !all_finite(y)) throw InvalidArgument("pattern contains non-finite values");
  inputs_.append_row(x);
  outputs_.append_row(y);
}

void GrnnModel::remove_pattern(std::size_t i) {
  if (i >= size()) throw InvalidArgument("remove_pattern: index out of range");
  inputs_.erase_row(i);
  outputs_.erase_row(i);
}

void GrnnModel::require_nonempty() const {
  if (empty()) throw EmptyModelError("GRNN model holds no patterns");
}

void GrnnModel::check_query(std::span<const double> x) const {
  if (x.size() != input_dim()) {
    throw DimensionError("query has " + std::to_string(x.size()) + " inputs, model expects " +
                         std::to_string(input_dim()));
  }
}

Vector GrnnModel::to_model_space(std::span<const double> x) const {
  check_query(x);
  if (norm_) return apply_norm(*norm_, x);
  return to_vector(x);
}

Vector GrnnModel::distances(std::span<const double> model_x) const {
  check_query(model_x);
  Vector d(size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = squared_distance(model_x, inputs_.row(i));
  return d;
}

Vector GrnnModel::kernel_weights(std::span<const double> x) const {
  require_nonempty();
  return normalized_gaussian_weights(distances(to_model_space(x)), sigma_);
}

void GrnnModel::predict_model_space(std::span<const double> model_x,
                                    std::span<double> out) const {
  const std::size_t n = size();
  const std::size_t m = output_dim();
  const Vector d = distances(model_x);
  const double d_min = *std::min_element(d.begin(), d.end());
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma_ * sigma_);

  Vector lo(m, std::numeric_limits<double>::infinity());
  Vector hi(m, -std::numeric_limits<double>::infinity());
  std::fill(out.begin(), out.end(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto yi = outputs_.row(i);
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = std::min(lo[j], yi[j]);
      hi[j] = std::max(hi[j], yi[j]);
    }
    const double w = std::exp(-(d[i] - d_min) * inv_two_sigma_sq);
    if (w == 0.0) continue;
    total += w;
    for (std::size_t j = 0; j < m; ++j) out[j] += w * yi[j];
  }
  // rounding can push a convex combination a few ulps past its hull
  for (std::size_t j = 0; j < m; ++j) out[j] = std::clamp(out[j] / total, lo[j], hi[j]);
}

Vector GrnnModel::predict(std::span<const double> x) const {
  require_nonempty();
  const Vector q = to_model_space(x);
  Vector out(output_dim());
  predict_model_space(q, out);
  return out;
}

Matrix GrnnModel::predict_batch(const Matrix& queries, unsigned threads) const {
  require_nonempty();
  if (queries.cols() != input_dim() && !queries.empty()) {
    throw DimensionError("query matrix has " + std::to_string(queries.cols()) +
                         " columns, model expects " + std::to_string(input_dim()));
  }
  Matrix out(queries.rows(), output_dim());
  auto run = [&](std::size_t first, std::size_t last) {
    Vector q;
    for (std::size_t r = first; r < last; ++r) {
      q.assign(queries.row(r).begin(), queries.row(r).end());
      if (norm_) apply_norm_inplace(*norm_, q);
      predict_model_space(q, out.row(r));
    }
  };

  const std::size_t rows = queries.rows();
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(rows, 1));
  if (workers == 1) {
    run(0, rows);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (rows + workers - 1) / workers;
  for (std::size_t t = 0; t < workers; ++t) {
    const std::size_t first = t * chunk;
    const std::size_t last = std::min(rows, first + chunk);
    if (first >= last) break;
    pool.emplace_back(run, first, last);
  }
  for (auto& th : pool) th.join();
  return out;
}

GrnnModel train(std::span<const Pattern> patterns, double sigma) {
  if (patterns.empty()) throw InvalidArgument("train: no patterns");
  check_sigma(sigma);
  const std::size_t d_in = patterns.front().x.size();
  const std::size_t d_out = patterns.front().y.size();
  GrnnModel model(d_in, d_out, sigma);
  for (const auto& p : patterns) model.add_pattern(p.x, p.y);
  return model;
}

GrnnModel train(const Matrix& inputs, const Matrix& targets, double sigma) {
  if (inputs.empty()) throw InvalidArgument("train: no patterns");
  if (inputs.rows() != targets.rows()) {
    throw DimensionError("train: " + std::to_string(inputs.rows()) + " input rows vs " +
                         std::to_string(targets.rows()) + " target rows");
  }
  check_sigma(sigma);
  GrnnModel model(inputs.cols(), targets.cols(), sigma);
  for (std::size_t r = 0; r < inputs.rows(); ++r) model.add_pattern(inputs.row(r), targets.row(r));
  return model;
}

double mse(const Matrix& predictions, const Matrix& targets) {
  if (predictions.rows() != targets.rows() || predictions.cols() != targets.cols()) {
    throw DimensionError("mse: shape mismatch");
  }
  if (targets.empty() || targets.cols() == 0) throw InvalidArgument("mse: no rows");
  const auto p = predictions.flat();
  const auto t = targets.flat();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double e = p[i] - t[i];
    sum += e * e;
  }
  return sum / static_cast<double>(p.size());
}

double training_mse(const GrnnModel& model, std::span<const Pattern> patterns) {
  if (patterns.empty()) throw InvalidArgument("training_mse: no patterns");
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& p : patterns) {
    if (p.y.size() != model.output_dim()) throw DimensionError("training_mse: target width mismatch");
    const Vector yhat = model.predict(p.x);
    for (std::size_t j = 0; j < yhat.size(); ++j) {
      const double e = yhat[j] - p.y[j];
      sum += e * e;
    }
    count += yhat.size();
  }
  return sum / static_cast<double>(count);
}

double training_mse(const GrnnModel& model, const Matrix& inputs, const Matrix& targets,
                    unsigned threads) {
  if (inputs.empty()) throw InvalidArgument("training_mse: no patterns");
  if (targets.cols() != model.output_dim()) throw DimensionError("training_mse: target width mismatch");
  return mse(model.predict_batch(inputs, threads), targets);
}

}  // namespace grnn
