#include "grnn/sysid.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "grnn/serialize.hpp"

namespace grnn::sysid {

const char* to_string(PlantKind kind) noexcept {
  switch (kind) {
    case PlantKind::linear_first_order: return "linear";
    case PlantKind::nonlinear_benchmark: return "nonlinear";
    case PlantKind::quad_altitude: return "quad";
  }
  return "unknown";
}

PlantKind parse_plant_kind(const std::string& text) {
  if (text == "linear" || text == "linear_first_order") return PlantKind::linear_first_order;
  if (text == "nonlinear" || text == "nonlinear_benchmark") return PlantKind::nonlinear_benchmark;
  if (text == "quad" || text == "quad_altitude") return PlantKind::quad_altitude;
  throw InvalidArgument("unknown plant kind '" + text + "'");
}

void PlantSpec::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("plant parameters must be finite");
  if (!(quad.dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!(quad.mass > 0.0)) throw InvalidArgument("mass must be positive");
}

void LagConfig::validate() const {
  if (n_u < 1) throw InvalidArgument("n_u must be >= 1");
}

Vector simulate_plant(const PlantSpec& spec, const Vector& u, double y0) {
  spec.validate();
  Vector y(u.size());
  if (u.empty()) return y;
  y[0] = y0;
  control::QuadAltitudeState quad{y0, 0.0};
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    if (!std::isfinite(u[k])) throw SimulationError("non-finite input at step " + std::to_string(k), k);
    double next = 0.0;
    switch (spec.kind) {
      case PlantKind::linear_first_order:
        next = spec.a * y[k] + spec.b * u[k];
        break;
      case PlantKind::nonlinear_benchmark:
        next = y[k] / (1.0 + y[k] * y[k]) + u[k] * u[k] * u[k];
        break;
      case PlantKind::quad_altitude:
        quad = control::quad_altitude_step(quad, u[k], spec.quad.dt, spec.quad, k);
        next = quad.z;
        break;
    }
    if (!std::isfinite(next)) throw SimulationError("non-finite plant output at step " + std::to_string(k + 1), k + 1);
    y[k + 1] = next;
  }
  return y;
}

Dataset build_sysid_dataset(const Vector& u, const Vector& y, const LagConfig& lags) {
  lags.validate();
  if (u.size() != y.size()) throw DimensionError("input and output sequences differ in length");
  const std::size_t start = lags.max_lag();
  if (u.size() <= start) throw InvalidArgument("sequences too short for the requested lags");

  Dataset ds;
  ds.name = "sysid";
  ds.task = TaskKind::fitting;
  ds.inputs = Matrix(0, lags.width());
  ds.targets = Matrix(0, 1);
  for (std::size_t i = 1; i <= lags.n_y; ++i) ds.input_names.push_back("y_lag" + std::to_string(i));
  for (std::size_t i = 1; i <= lags.n_u; ++i) ds.input_names.push_back("u_lag" + std::to_string(i));
  ds.target_names = {"y"};

  Vector row(lags.width());
  for (std::size_t k = start; k < u.size(); ++k) {
    for (std::size_t i = 0; i < lags.n_y; ++i) row[i] = y[k - 1 - i];
    for (std::size_t i = 0; i < lags.n_u; ++i) row[lags.n_y + i] = u[k - 1 - i];
    ds.inputs.append_row(row);
    ds.targets.append_row(std::span(&y[k], 1));
  }
  return ds;
}

Vector random_excitation(std::size_t length, double lo, double hi, std::uint64_t seed) {
  if (!(hi > lo)) throw InvalidArgument("excitation range must be nonempty");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  Vector u(length);
  for (double& v : u) v = dist(rng);
  return u;
}

IdentifierEvaluation evaluate_identifier(const GrnnModel& model, const PlantSpec& spec,
                                         const LagConfig& lags, const Vector& test_u, double y0,
                                         const PredictionTap& tap) {
  if (model.input_dim() != lags.width() || model.output_dim() != 1) {
    throw DimensionError("model arity (" + std::to_string(model.input_dim()) + "," +
                         std::to_string(model.output_dim()) + ") does not match lags (" +
                         std::to_string(lags.width()) + ",1)");
  }
  const Vector y = simulate_plant(spec, test_u, y0);
  // regressors come only from the true plant trajectory
  const Dataset rows = build_sysid_dataset(test_u, y, lags);

  IdentifierEvaluation eval;
  double sum = 0.0;
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const std::size_t k = lags.max_lag() + r;
    double y_hat = model.predict(rows.inputs.row(r))[0];
    if (tap) tap(k, y_hat);
    eval.k.push_back(k);
    eval.u.push_back(test_u[k]);
    eval.y.push_back(y[k]);
    eval.y_hat.push_back(y_hat);
    sum += (y_hat - y[k]) * (y_hat - y[k]);
  }
  eval.mse = sum / static_cast<double>(rows.rows());
  return eval;
}

void write_trajectory_csv(const IdentifierEvaluation& eval, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "k,u,y,y_hat\n";
  for (std::size_t i = 0; i < eval.k.size(); ++i) {
    out << eval.k[i] << ',' << format_exact(eval.u[i]) << ',' << format_exact(eval.y[i]) << ','
        << format_exact(eval.y_hat[i]) << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace grnn::sysid
