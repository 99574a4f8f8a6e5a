#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "grnn/control.hpp"
#include "grnn/data.hpp"
#include "grnn/grnn.hpp"

namespace grnn::sysid {

enum class PlantKind { linear_first_order, nonlinear_benchmark, quad_altitude };

const char* to_string(PlantKind kind) noexcept;
PlantKind parse_plant_kind(const std::string& text);

struct PlantSpec {
  PlantKind kind = PlantKind::linear_first_order;
  /// linear_first_order: y(k+1) = a y(k) + b u(k)
  double a = 0.5;
  double b = 1.0;
  /// quad_altitude only; u is thrust in N and y is altitude.
  control::QuadParams quad;

  void validate() const;
};

/// Regressor order: n_y past outputs and n_u past inputs.
struct LagConfig {
  std::size_t n_y = 1;
  std::size_t n_u = 1;

  std::size_t max_lag() const noexcept { return n_y > n_u ? n_y : n_u; }
  std::size_t width() const noexcept { return n_y + n_u; }
  void validate() const;
};

/// y(0) = y0, then one plant step per input; the returned sequence has the
/// same length as u. Throws SimulationError with the step index on blow-up.
Vector simulate_plant(const PlantSpec& spec, const Vector& u, double y0 = 0.0);

/// Series-parallel regressors: row k (k = max_lag .. L-1) holds
/// y(k-1)..y(k-n_y), u(k-1)..u(k-n_u) and targets y(k).
Dataset build_sysid_dataset(const Vector& u, const Vector& y, const LagConfig& lags);

/// Seeded uniform excitation on [lo, hi].
Vector random_excitation(std::size_t length, double lo, double hi, std::uint64_t seed);

struct IdentifierEvaluation {
  double mse = 0.0;
  /// Aligned from k = max_lag.
  std::vector<std::size_t> k;
  Vector u;
  Vector y;
  Vector y_hat;
};

/// Called after each prediction; may overwrite y_hat. Used to check that
/// predictions are never fed back into later regressors.
using PredictionTap = std::function<void(std::size_t k, double& y_hat)>;

/// Simulates the plant on test_u from y0 and predicts each y(k) from the true
/// lagged outputs. Throws DimensionError if the model width does not match lags.
IdentifierEvaluation evaluate_identifier(const GrnnModel& model, const PlantSpec& spec,
                                         const LagConfig& lags, const Vector& test_u,
                                         double y0 = 0.0, const PredictionTap& tap = {});

/// `k,u,y,y_hat` CSV.
void write_trajectory_csv(const IdentifierEvaluation& eval, const std::filesystem::path& path);

}  // namespace grnn::sysid
