#pragma once

#include <span>
#include <vector>

#include "grnn/types.hpp"

namespace grnn {

/// Per-input-dimension z-score statistics (population standard deviation).
struct NormStats {
  Vector mean;
  Vector stddev;
  /// constant_column[j] is set when column j had zero spread; its stddev is 1.
  std::vector<bool> constant_column;

  std::size_t dims() const noexcept { return mean.size(); }
  bool any_constant() const noexcept;

  friend bool operator==(const NormStats&, const NormStats&) = default;
};

/// Column statistics of `inputs`. Requires at least one row.
NormStats compute_norm_stats(const Matrix& inputs);

/// (x - mean) / stddev, elementwise.
Vector apply_norm(const NormStats& stats, std::span<const double> x);
void apply_norm_inplace(const NormStats& stats, std::span<double> x);

}  // namespace grnn
