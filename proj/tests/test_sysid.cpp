#include <gtest/gtest.h>

#include <cmath>

#include "grnn/sysid.hpp"

using grnn::Vector;
using namespace grnn::sysid;

namespace {

PlantSpec linear_plant() { return {PlantKind::linear_first_order, 0.5, 1.0, {}}; }

Vector sinusoid(std::size_t n, double amp) {
  Vector u(n);
  for (std::size_t k = 0; k < n; ++k) u[k] = amp * std::sin(static_cast<double>(k) / 10.0);
  return u;
}

grnn::GrnnModel identify(const PlantSpec& spec, const Vector& u, const LagConfig& lags, double sigma) {
  const auto ds = build_sysid_dataset(u, simulate_plant(spec, u), lags);
  return grnn::train(ds.inputs, ds.targets, sigma);
}

}  // namespace

TEST(SimulatePlant, LinearHandIteration) {
  EXPECT_EQ(simulate_plant(linear_plant(), Vector(6, 0.0)), Vector(6, 0.0));
  EXPECT_EQ(simulate_plant(linear_plant(), Vector{1.0, 0.0, 0.0}), (Vector{0.0, 1.0, 0.5}));
}

TEST(SimulatePlant, NonlinearFixedPointAndStep) {
  const PlantSpec spec{PlantKind::nonlinear_benchmark, 0, 0, {}};
  EXPECT_EQ(simulate_plant(spec, Vector(5, 0.0)), Vector(5, 0.0));
  // y1 = 0/(1+0) + 1^3 = 1, y2 = 1/2 + 0
  EXPECT_EQ(simulate_plant(spec, Vector{1.0, 0.0, 0.0}), (Vector{0.0, 1.0, 0.5}));
}

TEST(SimulatePlant, QuadDelegatesToAltitudeModel) {
  PlantSpec spec{PlantKind::quad_altitude, 0, 0, {}};
  const double hover = spec.quad.mass * spec.quad.gravity;
  const auto y = simulate_plant(spec, Vector(50, hover), 2.0);
  for (double v : y) EXPECT_DOUBLE_EQ(v, 2.0);
  const auto fall = simulate_plant(spec, Vector{0.0, 0.0}, 0.0);
  EXPECT_NEAR(fall[1], -0.003924, 1e-15);
}

TEST(SimulatePlant, BlowUpReportsStep) {
  const PlantSpec spec{PlantKind::nonlinear_benchmark, 0, 0, {}};
  try {
    simulate_plant(spec, Vector{0.0, 0.0, 1e110, 0.0});
    FAIL();
  } catch (const grnn::SimulationError& e) {
    EXPECT_EQ(e.step(), 3u);
  }
}

TEST(BuildDataset, RowCounts) {
  EXPECT_EQ(build_sysid_dataset(Vector(5, 1.0), Vector(5, 2.0), {1, 1}).rows(), 4u);
  for (std::size_t L = 1; L <= 12; ++L) {
    for (std::size_t ny = 0; ny <= 4; ++ny) {
      for (std::size_t nu = 1; nu <= 4; ++nu) {
        const LagConfig lags{ny, nu};
        if (L <= lags.max_lag()) {
          EXPECT_THROW(build_sysid_dataset(Vector(L, 0.0), Vector(L, 0.0), lags), grnn::InvalidArgument);
        } else {
          const auto ds = build_sysid_dataset(Vector(L, 0.0), Vector(L, 0.0), lags);
          EXPECT_EQ(ds.rows(), L - lags.max_lag());
          EXPECT_EQ(ds.input_dim(), ny + nu);
        }
      }
    }
  }
}

TEST(BuildDataset, ConstantSequencesGiveIdenticalRows) {
  const auto ds = build_sysid_dataset(Vector(10, 0.3), Vector(10, -1.2), {2, 3});
  for (std::size_t r = 1; r < ds.rows(); ++r) {
    EXPECT_TRUE(std::equal(ds.inputs.row(r).begin(), ds.inputs.row(r).end(), ds.inputs.row(0).begin()));
    EXPECT_EQ(ds.targets(r, 0), ds.targets(0, 0));
  }
}

TEST(BuildDataset, LinearRowsObeyPlantEquation) {
  const auto u = random_excitation(200, -1.0, 1.0, 4);
  const auto ds = build_sysid_dataset(u, simulate_plant(linear_plant(), u), {1, 1});
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    EXPECT_EQ(ds.targets(r, 0), 0.5 * ds.inputs(r, 0) + ds.inputs(r, 1));
  }
}

TEST(BuildDataset, RegressorLayout) {
  const Vector u{10, 11, 12, 13}, y{20, 21, 22, 23};
  const auto ds = build_sysid_dataset(u, y, {2, 1});
  ASSERT_EQ(ds.rows(), 2u);
  EXPECT_EQ(ds.inputs(0, 0), 21);
  EXPECT_EQ(ds.inputs(0, 1), 20);
  EXPECT_EQ(ds.inputs(0, 2), 11);
  EXPECT_EQ(ds.targets(0, 0), 22);
  EXPECT_THROW(build_sysid_dataset(Vector(4), Vector(3), {1, 1}), grnn::DimensionError);
  EXPECT_THROW(build_sysid_dataset(Vector(4), Vector(4), {1, 0}), grnn::InvalidArgument);
}

TEST(EvaluateIdentifier, LinearPlantUnseenSinusoid) {
  const LagConfig lags{1, 1};
  const auto model = identify(linear_plant(), random_excitation(5000, -1.0, 1.0, 0), lags, 0.05);
  const auto eval = evaluate_identifier(model, linear_plant(), lags, sinusoid(500, 0.5));
  EXPECT_LT(eval.mse, 1e-3);
  EXPECT_EQ(eval.k.front(), 1u);
  EXPECT_EQ(eval.y_hat.size(), 499u);
}

TEST(EvaluateIdentifier, MemorizedTrajectory) {
  const LagConfig lags{1, 1};
  const auto u = random_excitation(400, -1.0, 1.0, 6);
  const auto model = identify(linear_plant(), u, lags, 1e-4);
  EXPECT_LT(evaluate_identifier(model, linear_plant(), lags, u).mse, 1e-8);
}

TEST(EvaluateIdentifier, ZeroFixedPoint) {
  const LagConfig lags{1, 1};
  auto u = random_excitation(300, -1.0, 1.0, 2);
  u.insert(u.end(), 50, 0.0);
  auto y = simulate_plant(linear_plant(), u);
  // append a segment that sits at the origin so (0, 0) -> 0 is stored
  Vector uz(20, 0.0), yz(20, 0.0);
  auto ds = build_sysid_dataset(u, y, lags);
  const auto zero_rows = build_sysid_dataset(uz, yz, lags);
  for (std::size_t r = 0; r < zero_rows.rows(); ++r) {
    ds.inputs.append_row(zero_rows.inputs.row(r));
    ds.targets.append_row(zero_rows.targets.row(r));
  }
  const auto model = grnn::train(ds.inputs, ds.targets, 1e-3);
  EXPECT_LT(evaluate_identifier(model, linear_plant(), lags, Vector(100, 0.0)).mse, 1e-6);
}

TEST(EvaluateIdentifier, LagMismatch) {
  const auto model = identify(linear_plant(), random_excitation(50, -1, 1, 1), {2, 2}, 0.1);
  EXPECT_THROW(evaluate_identifier(model, linear_plant(), {1, 1}, Vector(10, 0.0)), grnn::DimensionError);
}

TEST(EvaluateIdentifier, PredictionsNeverFedBack) {
  const LagConfig lags{2, 1};
  const auto model = identify(linear_plant(), random_excitation(2000, -1.0, 1.0, 3), lags, 0.1);
  const auto u = sinusoid(100, 0.5);
  const auto clean = evaluate_identifier(model, linear_plant(), lags, u);
  const auto corrupted = evaluate_identifier(model, linear_plant(), lags, u, 0.0, [](std::size_t k, double& y_hat) {
    if (k == 10) y_hat = 1e6;
  });
  for (std::size_t i = 0; i < clean.k.size(); ++i) {
    if (clean.k[i] == 10) {
      EXPECT_EQ(corrupted.y_hat[i], 1e6);
    } else {
      EXPECT_EQ(corrupted.y_hat[i], clean.y_hat[i]);
    }
  }
}
