#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "grnn/grnn.hpp"
#include "grnn/growth.hpp"

namespace grnn::control {

/// Vertical point-mass model: m z'' = u - m g - c z'.
struct QuadParams {
  double mass = 1.0;      // kg
  double gravity = 9.81;  // m/s^2
  double drag = 0.3;      // N s/m
  double dt = 0.02;       // s
};

struct QuadAltitudeState {
  double z = 0.0;   // m
  double vz = 0.0;  // m/s
};

/// |z| or |vz| beyond this aborts the simulation.
inline constexpr double kStateBound = 1e6;

/// One semi-implicit Euler step: vz' = vz + dt (u - m g - c vz) / m, z' = z + dt vz'.
/// Requires 0 <= dt <= 0.1. Throws SimulationError when the new state is
/// non-finite or exceeds kStateBound (step index is the `step` argument).
QuadAltitudeState quad_altitude_step(const QuadAltitudeState& state, double thrust, double dt,
                                     const QuadParams& params = {}, std::size_t step = 0);

struct ControllerConfig {
  double kp = 6.0;
  double kd = 4.0;
  double u_min = 0.0;
  double u_max = 30.0;
  double sigma = 0.05;
  GrowthPolicy policy{1e-3, 0.5, 500};
  /// When false, adapt() is a no-op and the loop is the plain PD law.
  bool adaptation = true;
  QuadParams plant;

  void validate() const;
};

/// On-line inverse-dynamics controller. The model maps an observed
/// transition (y_k, y_{k+1}) to the thrust residual u - m g that produced
/// it, and is queried with the desired transition (y_k, r_{k+1}).
/// Far from stored experience it falls back to a PD law. Gravity is always
/// fed forward and the command is saturated to [u_min, u_max].
class OnlineController {
 public:
  explicit OnlineController(ControllerConfig config = {});

  const ControllerConfig& config() const noexcept { return config_; }
  const GrnnModel& inverse_model() const noexcept { return model_; }
  GrnnModel& inverse_model() noexcept { return model_; }

  double feedforward() const noexcept { return config_.plant.mass * config_.plant.gravity; }

  /// Thrust command for the current measurement and next reference.
  double step(double y_k, double r_next);

  /// Offers the pattern ((y_k, y_next) -> u_applied - m g) to the growth policy.
  InsertOutcome adapt(double y_k, double y_next, double u_applied);

  /// Forgets the velocity estimator's memory; the learned model is kept.
  void reset_episode() noexcept { previous_y_.reset(); }

  /// Whether the last step() used the learned branch.
  bool last_step_used_model() const noexcept { return last_used_model_; }

 private:
  ControllerConfig config_;
  GrnnModel model_;
  std::optional<double> previous_y_;
  bool last_used_model_ = false;
};

struct TrackingSample {
  std::size_t k = 0;
  double t = 0.0;
  double r = 0.0;
  double z = 0.0;
  double u = 0.0;
  std::size_t n_patterns = 0;
};

struct TrackingReport {
  std::vector<TrackingSample> samples;
  /// Seconds from the last reference change until the output enters and
  /// stays within the band; empty if it never settles.
  std::optional<double> settling_time;
  /// Mean |r - z| over the final 10% of samples.
  double steady_state_error = 0.0;
  /// Sum over samples of |r - z|.
  double cumulative_abs_error = 0.0;
  std::size_t max_patterns_seen = 0;
};

struct TrackingOptions {
  QuadAltitudeState initial{};
  /// Std-dev of additive altitude measurement noise (m); 0 disables it.
  double measurement_noise = 0.0;
  /// Settling band as a fraction of the final step size (or of |r_final| when larger).
  double settle_band_fraction = 0.05;
};

using ReferenceFn = std::function<double(double t)>;

/// Closed loop: measure, command, step the plant, adapt. Sample k records
/// r(t_k), z_k, the command applied at k and the store size after adapting.
TrackingReport run_tracking(OnlineController& controller, const ReferenceFn& reference,
                            std::size_t horizon_steps, std::uint64_t seed,
                            const TrackingOptions& options = {});

/// Settling time / steady-state metrics for an already recorded trajectory.
void compute_tracking_metrics(TrackingReport& report, double band_fraction,
                              double initial_z);

/// `k,t,r,z,u,n_patterns` CSV.
void write_tracking_csv(const TrackingReport& report, const std::filesystem::path& path);

ReferenceFn step_reference(double level, double t_step = 0.0, double before = 0.0);
ReferenceFn square_reference(double low, double high, double period);

}  // namespace grnn::control
