#pragma once

#include <cstddef>
#include <optional>

#include "grnn/grnn.hpp"

namespace grnn {

/// Admission and capacity rules for an incrementally grown pattern store.
struct GrowthPolicy {
  /// Candidates whose nearest stored input is farther than this (squared
  /// distance, model space) are always admitted.
  double novelty_radius = 1e-3;
  /// Near candidates are admitted only if max |predict - y| exceeds this.
  double error_gate = 0.5;
  std::size_t max_patterns = 500;

  /// Throws InvalidArgument unless radius >= 0, gate >= 0, capacity >= 1.
  void validate() const;

  friend bool operator==(const GrowthPolicy&, const GrowthPolicy&) = default;
};

enum class AdmitReason {
  empty,      ///< store was empty
  novel,      ///< nearest stored input farther than novelty_radius
  corrective, ///< near an existing input but prediction error above error_gate
  redundant,  ///< rejected: near and already predicted well
};

const char* to_string(AdmitReason reason) noexcept;

struct AdmitDecision {
  bool admit = false;
  AdmitReason reason = AdmitReason::redundant;
  /// Nearest stored squared distance (infinity for an empty store).
  double nearest_distance = 0.0;
  /// Max component error of the current prediction; only evaluated for near candidates.
  double prediction_error = 0.0;
};

/// Admission = empty OR nearest > radius OR (nearest <= radius AND error > gate).
/// The candidate is given in raw input space.
AdmitDecision should_insert(const GrnnModel& model, const Pattern& candidate,
                            const GrowthPolicy& policy);

/// Index of the stored pattern closest to its own nearest neighbour; ties go
/// to the lowest index. A single stored pattern is its own answer.
std::size_t most_redundant_pattern(const GrnnModel& model);

struct InsertOutcome {
  bool inserted = false;
  AdmitReason reason = AdmitReason::redundant;
  std::optional<std::size_t> evicted;
};

/// Applies should_insert; at capacity the most redundant pattern is evicted
/// first. The model never exceeds policy.max_patterns. Model is unchanged on rejection.
InsertOutcome insert_bounded(GrnnModel& model, const Pattern& candidate,
                             const GrowthPolicy& policy);

}  // namespace grnn
