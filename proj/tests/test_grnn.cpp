#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "grnn/grnn.hpp"
#include "grnn/synthetic.hpp"
#include "oracles.hpp"

using grnn::GrnnModel;
using grnn::Pattern;
using grnn::Vector;

namespace {

GrnnModel two_point_model(double sigma) {
  const std::vector<Pattern> p{{{0.0}, {0.0}}, {{2.0}, {1.0}}};
  return grnn::train(p, sigma);
}

std::vector<Pattern> random_patterns(std::mt19937_64& rng, std::size_t n, std::size_t d_in,
                                     std::size_t d_out) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Pattern> out(n);
  for (auto& p : out) {
    p.x.resize(d_in);
    p.y.resize(d_out);
    for (double& v : p.x) v = u(rng);
    for (double& v : p.y) v = u(rng);
  }
  return out;
}

}  // namespace

TEST(SquaredDistance, HandValues) {
  const Vector a{1.0, 2.0}, b{3.0, 4.0};
  EXPECT_DOUBLE_EQ(grnn::squared_distance(a, b), 8.0);
  EXPECT_DOUBLE_EQ(grnn::squared_distance(Vector{0.0}, Vector{2.0}), 4.0);
  EXPECT_DOUBLE_EQ(grnn::squared_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(grnn::squared_distance(a, b), grnn::squared_distance(b, a));
}

TEST(SquaredDistance, RejectsMismatchedLengths) {
  EXPECT_THROW(grnn::squared_distance(Vector{1.0}, Vector{1.0, 2.0}), grnn::DimensionError);
}

TEST(KernelWeights, SinglePatternIsOne) {
  const auto m = grnn::train(std::vector<Pattern>{{{3.0, -1.0}, {7.0}}}, 0.3);
  const auto w = m.kernel_weights(Vector{100.0, 42.0});
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0], 1.0);
}

TEST(KernelWeights, SymmetricQueryHalves) {
  const auto w = two_point_model(1.0).kernel_weights(Vector{1.0});
  EXPECT_DOUBLE_EQ(w[0], 0.5);
  EXPECT_DOUBLE_EQ(w[1], 0.5);
}

TEST(KernelWeights, OffCentreQuery) {
  // D = (0.25, 2.25); ratio exp(-1) -> 1/(1+e^-1), e^-1/(1+e^-1)
  const auto w = two_point_model(1.0).kernel_weights(Vector{0.5});
  EXPECT_NEAR(w[0], 0.7310585786300049, 1e-15);
  EXPECT_NEAR(w[1], 0.2689414213699951, 1e-15);
}

TEST(KernelWeights, EmptyModelThrows) {
  GrnnModel m(1, 1, 1.0);
  EXPECT_THROW(m.kernel_weights(Vector{0.0}), grnn::EmptyModelError);
  EXPECT_THROW(m.predict(Vector{0.0}), grnn::EmptyModelError);
}

TEST(KernelWeights, FullUnderflowSplitsAmongTies) {
  // query equidistant from two patterns, third pattern far away; sigma tiny
  const std::vector<Pattern> p{{{-1.0}, {2.0}}, {{1.0}, {4.0}}, {{5.0}, {100.0}}};
  const auto m = grnn::train(p, 1e-6);
  const auto w = m.kernel_weights(Vector{0.0});
  EXPECT_EQ(w[0], 0.5);
  EXPECT_EQ(w[1], 0.5);
  EXPECT_EQ(w[2], 0.0);
  EXPECT_EQ(m.predict(Vector{0.0})[0], 3.0);
}

TEST(KernelWeights, DistantQueryDoesNotUnderflowToNaN) {
  const auto m = two_point_model(0.01);
  const auto y = m.predict(Vector{1e6});
  EXPECT_EQ(y[0], 1.0);
}

TEST(Predict, SinglePatternAnywhere) {
  const auto m = grnn::train(std::vector<Pattern>{{{0.3}, {3.7}}}, 0.5);
  EXPECT_EQ(m.predict(Vector{-50.0})[0], 3.7);
  EXPECT_EQ(m.predict(Vector{0.3})[0], 3.7);
}

TEST(Predict, HandEvaluatedTwoPoint) {
  EXPECT_NEAR(two_point_model(1.0).predict(Vector{0.5})[0], 1.0 / (1.0 + std::exp(1.0)), 1e-15);
}

TEST(Predict, NearestPatternLimit) {
  EXPECT_EQ(two_point_model(1e-4).predict(Vector{0.4})[0], 0.0);
}

TEST(Predict, DimensionMismatchThrows) {
  EXPECT_THROW(two_point_model(1.0).predict(Vector{0.5, 1.0}), grnn::DimensionError);
}

TEST(Train, StoresEveryPattern) {
  const auto ds = grnn::synthetic_simplefit(94);
  const auto m = grnn::train(ds.patterns(), 0.1);
  EXPECT_EQ(m.size(), 94u);
  EXPECT_EQ(m.pattern(17), ds.patterns()[17]);
  EXPECT_EQ(grnn::train(std::vector<Pattern>{{{1.0}, {2.0}}}, 1.0).size(), 1u);
}

TEST(Train, RejectsBadInput) {
  EXPECT_THROW(grnn::train(std::vector<Pattern>{}, 1.0), grnn::InvalidArgument);
  EXPECT_THROW(grnn::train(std::vector<Pattern>{{{1.0}, {2.0}}}, 0.0), grnn::InvalidArgument);
  EXPECT_THROW(grnn::train(std::vector<Pattern>{{{1.0}, {2.0}}}, -1.0), grnn::InvalidArgument);
  const std::vector<Pattern> mixed{{{1.0}, {2.0}}, {{1.5}, {2.0, 3.0}}};
  EXPECT_THROW(grnn::train(mixed, 1.0), grnn::DimensionError);
  const std::vector<Pattern> nan{{{NAN}, {2.0}}};
  EXPECT_THROW(grnn::train(nan, 1.0), grnn::InvalidArgument);
}

TEST(Train, Deterministic) {
  std::mt19937_64 rng(3);
  const auto p = random_patterns(rng, 30, 3, 2);
  const auto a = grnn::train(p, 0.4);
  const auto b = grnn::train(p, 0.4);
  EXPECT_EQ(a.stored_inputs(), b.stored_inputs());
  const Vector q{0.1, -0.2, 0.3};
  EXPECT_EQ(a.predict(q), b.predict(q));
}

TEST(TrainingMse, Definitions) {
  const auto m = grnn::train(std::vector<Pattern>{{{0.0}, {1.0}}}, 1.0);
  EXPECT_DOUBLE_EQ(grnn::training_mse(m, std::vector<Pattern>{{{0.0}, {0.0}}}), 1.0);
  EXPECT_DOUBLE_EQ(grnn::training_mse(m, std::vector<Pattern>{{{5.0}, {1.0}}}), 0.0);
  EXPECT_THROW(grnn::training_mse(m, std::vector<Pattern>{}), grnn::InvalidArgument);
}

TEST(TrainingMse, TinySigmaRecallsOwnPatterns) {
  const auto ds = grnn::synthetic_simplefit(94);
  const auto m = grnn::train(ds.patterns(), 1e-3);
  EXPECT_LE(grnn::training_mse(m, ds.patterns()), 1e-12);
}

TEST(GrnnProperties, MatchesNaiveOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> n_dist(1, 50), d_dist(1, 5), m_dist(1, 3);
  std::uniform_real_distribution<double> s_dist(0.3, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_patterns(rng, n_dist(rng), d_dist(rng), m_dist(rng));
    const double sigma = s_dist(rng);
    const auto model = grnn::train(p, sigma);
    std::vector<oracle::Point> op;
    for (const auto& q : p) op.push_back({q.x, q.y});
    Vector query(p[0].x.size());
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (double& v : query) v = u(rng);
    Vector expect;
    ASSERT_TRUE(oracle::naive_grnn(op, sigma, query, expect));
    const Vector got = model.predict(query);
    for (std::size_t j = 0; j < got.size(); ++j) {
      EXPECT_NEAR(got[j], expect[j], 1e-10 * std::max(1.0, std::abs(expect[j])));
    }
  }
}

TEST(GrnnProperties, ConvexityAndNormalization) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_patterns(rng, 20, 2, 2);
    const double sigma = std::pow(10.0, std::uniform_real_distribution<double>(-3, 1)(rng));
    const auto model = grnn::train(p, sigma);
    Vector q{std::uniform_real_distribution<double>(-10, 10)(rng), std::uniform_real_distribution<double>(-10, 10)(rng)};
    const auto w = model.kernel_weights(q);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    for (double wi : w) {
      EXPECT_GE(wi, 0.0);
      EXPECT_LE(wi, 1.0);
    }
    const auto y = model.predict(q);
    for (std::size_t j = 0; j < 2; ++j) {
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& pt : p) {
        lo = std::min(lo, pt.y[j]);
        hi = std::max(hi, pt.y[j]);
      }
      EXPECT_GE(y[j], lo);
      EXPECT_LE(y[j], hi);
    }
  }
}

TEST(GrnnProperties, PermutationInvariance) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_patterns(rng, 25, 3, 1);
    const auto a = grnn::train(p, 0.7);
    std::shuffle(p.begin(), p.end(), rng);
    const auto b = grnn::train(p, 0.7);
    const Vector q{0.2, -0.4, 1.1};
    EXPECT_NEAR(a.predict(q)[0], b.predict(q)[0], 1e-12);
  }
}

TEST(GrnnProperties, NearestPatternAtTinySigma) {
  std::mt19937_64 rng(21);
  const auto p = random_patterns(rng, 15, 2, 1);
  std::vector<oracle::Point> op;
  for (const auto& q : p) op.push_back({q.x, q.y});
  const auto model = grnn::train(p, 1e-6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const Vector q{u(rng), u(rng)};
    EXPECT_EQ(model.predict(q)[0], p[oracle::nearest(op, q)].y[0]);
  }
}

TEST(GrnnProperties, InterpolatesDistinctInputs) {
  std::mt19937_64 rng(4);
  const auto p = random_patterns(rng, 40, 3, 2);
  double min_pair = INFINITY;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t k = i + 1; k < p.size(); ++k) min_pair = std::min(min_pair, std::sqrt(grnn::squared_distance(p[i].x, p[k].x)));
  }
  const auto model = grnn::train(p, min_pair / 10.0);
  for (const auto& pt : p) {
    const auto y = model.predict(pt.x);
    EXPECT_NEAR(y[0], pt.y[0], 1e-6);
    EXPECT_NEAR(y[1], pt.y[1], 1e-6);
  }
}

TEST(GrnnProperties, DuplicateInputsAverage) {
  const std::vector<Pattern> p{{{1.0}, {2.0}}, {{1.0}, {4.0}}};
  EXPECT_DOUBLE_EQ(grnn::train(p, 0.1).predict(Vector{1.0})[0], 3.0);
}

TEST(PredictBatch, ThreadedMatchesSequential) {
  std::mt19937_64 rng(8);
  const auto p = random_patterns(rng, 60, 4, 2);
  const auto model = grnn::train(p, 0.5);
  grnn::Matrix q(0, 4);
  for (int i = 0; i < 101; ++i) q.append_row(random_patterns(rng, 1, 4, 1)[0].x);
  const auto seq = model.predict_batch(q, 1);
  const auto par = model.predict_batch(q, 4);
  EXPECT_EQ(seq, par);
  for (std::size_t r = 0; r < q.rows(); ++r) EXPECT_EQ(seq(r, 1), model.predict(q.row(r))[1]);
}

TEST(Normalization, AttachedStatsApplyToQueries) {
  const std::vector<Pattern> raw{{{10.0}, {0.0}}, {{30.0}, {1.0}}};
  grnn::Matrix in(0, 1);
  in.append_row(raw[0].x);
  in.append_row(raw[1].x);
  const auto stats = grnn::compute_norm_stats(in);
  grnn::GrnnModel m(1, 1, 1.0);
  m.add_pattern(grnn::apply_norm(stats, raw[0].x), raw[0].y);
  m.add_pattern(grnn::apply_norm(stats, raw[1].x), raw[1].y);
  m.set_norm_stats(stats);
  // raw 20 maps to 0, midway between -1 and 1
  EXPECT_DOUBLE_EQ(m.predict(Vector{20.0})[0], 0.5);
}

TEST(SigmaSearch, PicksGridPointAndIsSeeded) {
  const auto ds = grnn::synthetic_simplefit(94);
  grnn::SigmaSearchOptions opts;
  opts.seed = 7;
  const auto a = grnn::select_sigma(ds.inputs, ds.targets, opts);
  const auto b = grnn::select_sigma(ds.inputs, ds.targets, opts);
  EXPECT_EQ(a.sigma, b.sigma);
  ASSERT_EQ(a.curve.size(), 25u);
  EXPECT_NEAR(a.curve.front().first, 1e-3, 1e-15);
  EXPECT_EQ(a.curve.back().first, 10.0);
  for (const auto& [s, e] : a.curve) EXPECT_GE(e, a.holdout_mse);
  // a smooth curve sampled every ~0.1 wants a sigma well below the range of x
  EXPECT_LT(a.sigma, 1.0);
}
