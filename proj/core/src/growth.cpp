#include "grnn/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grnn {

void GrowthPolicy::validate() const {
  if (!(novelty_radius >= 0.0) || !std::isfinite(novelty_radius)) {
    throw InvalidArgument("novelty radius must be finite and >= 0");
  }
  if (!(error_gate >= 0.0) || !std::isfinite(error_gate)) {
    throw InvalidArgument("error gate must be finite and >= 0");
  }
  if (max_patterns < 1) throw InvalidArgument("max_patterns must be >= 1");
}

const char* to_string(AdmitReason reason) noexcept {
  switch (reason) {
    case AdmitReason::empty: return "empty";
    case AdmitReason::novel: return "novel";
    case AdmitReason::corrective: return "corrective";
    case AdmitReason::redundant: return "redundant";
  }
  return "unknown";
}

AdmitDecision should_insert(const GrnnModel& model, const Pattern& candidate,
                            const GrowthPolicy& policy) {
  policy.validate();
  if (candidate.x.size() != model.input_dim() || candidate.y.size() != model.output_dim()) {
    throw DimensionError("candidate shape does not match model");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(candidate.x.begin(), candidate.x.end(), finite) ||
      !std::all_of(candidate.y.begin(), candidate.y.end(), finite)) {
    throw InvalidArgument("candidate contains non-finite values");
  }
  AdmitDecision d;
  if (model.empty()) {
    d.admit = true;
    d.reason = AdmitReason::empty;
    d.nearest_distance = std::numeric_limits<double>::infinity();
    return d;
  }

  const Vector q = model.to_model_space(candidate.x);
  const Vector dist = model.distances(q);
  d.nearest_distance = *std::min_element(dist.begin(), dist.end());
  if (d.nearest_distance > policy.novelty_radius) {
    d.admit = true;
    d.reason = AdmitReason::novel;
    return d;
  }

  const Vector yhat = model.predict(candidate.x);
  for (std::size_t j = 0; j < yhat.size(); ++j) {
    d.prediction_error = std::max(d.prediction_error, std::abs(yhat[j] - candidate.y[j]));
  }
  d.admit = d.prediction_error > policy.error_gate;
  d.reason = d.admit ? AdmitReason::corrective : AdmitReason::redundant;
  return d;
}

std::size_t most_redundant_pattern(const GrnnModel& model) {
  if (model.empty()) throw EmptyModelError("no pattern to evict");
  const std::size_t n = model.size();
  std::size_t best = 0;
  double best_nn = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double nn = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      nn = std::min(nn, squared_distance(model.stored_input(i), model.stored_input(k)));
    }
    if (nn < best_nn) {
      best_nn = nn;
      best = i;
    }
  }
  return best;
}

InsertOutcome insert_bounded(GrnnModel& model, const Pattern& candidate,
                             const GrowthPolicy& policy) {
  const AdmitDecision decision = should_insert(model, candidate, policy);
  InsertOutcome out;
  out.reason = decision.reason;
  if (!decision.admit) return out;

  const Vector x = model.to_model_space(candidate.x);
  while (model.size() >= policy.max_patterns) {
    const std::size_t victim = most_redundant_pattern(model);
    model.remove_pattern(victim);
    out.evicted = victim;
  }
  model.add_pattern(x, candidate.y);
  out.inserted = true;
  return out;
}

}  // namespace grnn
