#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "grnn/norm.hpp"
#include "grnn/types.hpp"

namespace grnn {

/// One stored training exemplar.
struct Pattern {
  Vector x;
  Vector y;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Sum of squared coordinate differences. Throws DimensionError on length mismatch.
double squared_distance(std::span<const double> x, std::span<const double> xi);

/// Generalized regression network: a pattern store queried through
/// normalized Gaussian kernel weights.
///
/// Inputs and outputs live in two row-major matrices so a query walks memory
/// linearly. When normalization statistics are attached, stored inputs are in
/// normalized space and every query is normalized before use; callers always
/// pass raw inputs.
///
/// A model is immutable once trained except through add_pattern/remove_pattern,
/// which the growth controller uses and which need exclusive access.
class GrnnModel {
 public:
  /// An empty store with fixed arity. Prediction throws until a pattern is added.
  GrnnModel(std::size_t d_in, std::size_t d_out, double sigma);

  std::size_t input_dim() const noexcept { return inputs_.cols(); }
  std::size_t output_dim() const noexcept { return outputs_.cols(); }
  std::size_t size() const noexcept { return inputs_.rows(); }
  bool empty() const noexcept { return inputs_.rows() == 0; }

  double sigma() const noexcept { return sigma_; }
  void set_sigma(double sigma);

  const std::optional<NormStats>& norm_stats() const noexcept { return norm_; }
  /// Attaches statistics; stored inputs are assumed to already be in normalized space.
  void set_norm_stats(NormStats stats);

  /// Stored input/output of pattern i, in model (possibly normalized) space.
  std::span<const double> stored_input(std::size_t i) const { return inputs_.row(i); }
  std::span<const double> stored_output(std::size_t i) const { return outputs_.row(i); }
  Pattern pattern(std::size_t i) const;
  const Matrix& stored_inputs() const noexcept { return inputs_; }
  const Matrix& stored_outputs() const noexcept { return outputs_; }

  /// Appends a pattern given in model space. Rejects non-finite values and shape mismatches.
  void add_pattern(std::span<const double> x, std::span<const double> y);
  void remove_pattern(std::size_t i);

  /// Maps a raw query into model space (identity when no statistics are attached).
  Vector to_model_space(std::span<const double> x) const;

  /// Squared distances from a model-space query to every stored input.
  Vector distances(std::span<const double> model_x) const;

  /// Normalized Gaussian weights for a raw query. Sums to one.
  Vector kernel_weights(std::span<const double> x) const;

  /// Weighted average of stored outputs for a raw query.
  Vector predict(std::span<const double> x) const;

  /// Row-wise predict. With threads > 1 rows are split into contiguous chunks;
  /// results are identical to the sequential call.
  Matrix predict_batch(const Matrix& queries, unsigned threads = 1) const;

 private:
  void require_nonempty() const;
  void check_query(std::span<const double> x) const;
  void predict_model_space(std::span<const double> model_x, std::span<double> out) const;

  Matrix inputs_;
  Matrix outputs_;
  double sigma_;
  std::optional<NormStats> norm_;
};

/// Weights computed from precomputed squared distances, shifted by their
/// minimum before exponentiating. If every non-minimal weight underflows the
/// result is the uniform distribution over the minimal-distance entries.
Vector normalized_gaussian_weights(std::span<const double> sq_distances, double sigma);

/// Single-pass training: stores every pattern once, in order.
/// Throws InvalidArgument for an empty list or sigma <= 0, DimensionError for
/// inconsistent shapes.
GrnnModel train(std::span<const Pattern> patterns, double sigma);

/// Same as train, from matching input/target matrices.
GrnnModel train(const Matrix& inputs, const Matrix& targets, double sigma);

/// Mean over rows and output components of the squared prediction error.
double training_mse(const GrnnModel& model, std::span<const Pattern> patterns);
double training_mse(const GrnnModel& model, const Matrix& inputs, const Matrix& targets,
                    unsigned threads = 1);

/// Mean squared difference between two equally shaped matrices.
double mse(const Matrix& predictions, const Matrix& targets);

struct SigmaSearchOptions {
  double min_sigma = 1e-3;
  double max_sigma = 10.0;
  std::size_t grid_points = 25;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct SigmaSearchResult {
  double sigma = 0.0;
  double holdout_mse = 0.0;
  /// (sigma, holdout MSE) for every grid point, ascending sigma.
  std::vector<std::pair<double, double>> curve;
};

/// Picks sigma from a log-spaced grid by holdout MSE on a seeded split.
/// Ties go to the smaller sigma. Needs at least two rows.
SigmaSearchResult select_sigma(const Matrix& inputs, const Matrix& targets,
                               const SigmaSearchOptions& options = {});

}  // namespace grnn
