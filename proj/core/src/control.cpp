#include "grnn/control.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <string>

#include "grnn/serialize.hpp"

namespace grnn::control {

QuadAltitudeState quad_altitude_step(const QuadAltitudeState& state, double thrust, double dt,
                                     const QuadParams& params, std::size_t step) {
  if (!(dt >= 0.0 && dt <= 0.1)) throw InvalidArgument("dt must lie in [0, 0.1]");
  if (!std::isfinite(state.z) || !std::isfinite(state.vz) || !std::isfinite(thrust)) {
    throw SimulationError("non-finite altitude state or thrust at step " + std::to_string(step), step);
  }
  QuadAltitudeState next;
  const double accel = (thrust - params.mass * params.gravity - params.drag * state.vz) / params.mass;
  next.vz = state.vz + dt * accel;
  next.z = state.z + dt * next.vz;
  if (!std::isfinite(next.z) || !std::isfinite(next.vz) || std::abs(next.z) > kStateBound ||
      std::abs(next.vz) > kStateBound) {
    throw SimulationError("altitude state blew up at step " + std::to_string(step), step);
  }
  return next;
}

void ControllerConfig::validate() const {
  if (!(u_max > u_min)) throw InvalidArgument("u_max must exceed u_min");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  if (!(plant.mass > 0.0)) throw InvalidArgument("mass must be positive");
  if (!(plant.dt > 0.0 && plant.dt <= 0.1)) throw InvalidArgument("dt must lie in (0, 0.1]");
  policy.validate();
}

OnlineController::OnlineController(ControllerConfig config)
    : config_(std::move(config)), model_(2, 1, config_.sigma) {
  config_.validate();
}

double OnlineController::step(double y_k, double r_next) {
  const double error = r_next - y_k;
  const double vz_estimate = previous_y_ ? (y_k - *previous_y_) / config_.plant.dt : 0.0;
  previous_y_ = y_k;

  last_used_model_ = false;
  double u = config_.kp * error;
  if (!model_.empty()) {
    const Vector query{y_k, r_next};
    const Vector d = model_.distances(model_.to_model_space(query));
    if (*std::min_element(d.begin(), d.end()) <= config_.policy.novelty_radius) {
      u += model_.predict(query)[0];
      last_used_model_ = true;
    }
  }
  if (!last_used_model_) u -= config_.kd * vz_estimate;
  return std::clamp(u + feedforward(), config_.u_min, config_.u_max);
}

InsertOutcome OnlineController::adapt(double y_k, double y_next, double u_applied) {
  if (!config_.adaptation) return {};
  const Pattern candidate{{y_k, y_next}, {u_applied - feedforward()}};
  return insert_bounded(model_, candidate, config_.policy);
}

void compute_tracking_metrics(TrackingReport& report, double band_fraction, double initial_z) {
  report.settling_time.reset();
  report.steady_state_error = 0.0;
  report.cumulative_abs_error = 0.0;
  const auto& s = report.samples;
  if (s.empty()) return;

  for (const auto& p : s) report.cumulative_abs_error += std::abs(p.r - p.z);

  const std::size_t tail = std::max<std::size_t>(1, s.size() / 10);
  for (std::size_t i = s.size() - tail; i < s.size(); ++i) report.steady_state_error += std::abs(s[i].r - s[i].z);
  report.steady_state_error /= static_cast<double>(tail);

  const double r_final = s.back().r;
  std::size_t change = 0;
  double r_before = initial_z;
  for (std::size_t i = s.size(); i-- > 0;) {
    if (s[i].r != r_final) {
      change = i + 1;
      r_before = s[i].r;
      break;
    }
  }
  const double band = band_fraction * std::max(std::abs(r_final - r_before), std::abs(r_final));
  std::optional<std::size_t> settled;
  for (std::size_t i = s.size(); i-- > change;) {
    if (std::abs(s[i].z - r_final) > band) break;
    settled = i;
  }
  if (settled) report.settling_time = s[*settled].t - s[change].t;
}

TrackingReport run_tracking(OnlineController& controller, const ReferenceFn& reference,
                            std::size_t horizon_steps, std::uint64_t seed,
                            const TrackingOptions& options) {
  if (horizon_steps < 1) throw InvalidArgument("horizon must be >= 1");
  const QuadParams& plant = controller.config().plant;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  auto measure = [&](double z) {
    return options.measurement_noise > 0.0 ? z + options.measurement_noise * noise(rng) : z;
  };

  TrackingReport report;
  report.samples.reserve(horizon_steps);
  QuadAltitudeState state = options.initial;
  double y = measure(state.z);
  for (std::size_t k = 0; k < horizon_steps; ++k) {
    const double t = static_cast<double>(k) * plant.dt;
    const double r_next = reference(t + plant.dt);
    const double u = controller.step(y, r_next);
    const QuadAltitudeState next = quad_altitude_step(state, u, plant.dt, plant, k);
    const double y_next = measure(next.z);
    controller.adapt(y, y_next, u);

    const std::size_t n = controller.inverse_model().size();
    report.samples.push_back({k, t, reference(t), state.z, u, n});
    report.max_patterns_seen = std::max(report.max_patterns_seen, n);
    state = next;
    y = y_next;
  }
  compute_tracking_metrics(report, options.settle_band_fraction, options.initial.z);
  return report;
}

void write_tracking_csv(const TrackingReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "k,t,r,z,u,n_patterns\n";
  for (const auto& s : report.samples) {
    out << s.k << ',' << format_exact(s.t) << ',' << format_exact(s.r) << ',' << format_exact(s.z)
        << ',' << format_exact(s.u) << ',' << s.n_patterns << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

ReferenceFn step_reference(double level, double t_step, double before) {
  return [=](double t) { return t >= t_step ? level : before; };
}

ReferenceFn square_reference(double low, double high, double period) {
  if (!(period > 0.0)) throw InvalidArgument("period must be positive");
  return [=](double t) { return std::fmod(t, period) < period / 2.0 ? high : low; };
}

}  // namespace grnn::control
