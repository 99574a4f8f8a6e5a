#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "grnn/data.hpp"
#include "grnn/synthetic.hpp"

namespace fs = std::filesystem;
using grnn::CsvSpec;
using grnn::TaskKind;

namespace {

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("grnn_data_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                 "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(LoadCsv, SimpleFitShape) {
  TempDir dir;
  std::string text = "x,y\n";
  for (int i = 0; i < 94; ++i) text += std::to_string(i * 0.1) + "," + std::to_string(i * 0.2) + "\n";
  write(dir.path() / "fit.csv", text);
  const auto ds = grnn::load_csv(dir.path() / "fit.csv", {1, TaskKind::fitting, true, "", {}});
  EXPECT_EQ(ds.rows(), 94u);
  EXPECT_EQ(ds.input_dim(), 1u);
  EXPECT_EQ(ds.output_dim(), 1u);
  EXPECT_EQ(ds.name, "fit");
  EXPECT_EQ(ds.input_names, std::vector<std::string>{"x"});
  EXPECT_DOUBLE_EQ(ds.targets(93, 0), 93 * 0.2);
}

TEST(LoadCsv, EmptyFileRejected) {
  TempDir dir;
  write(dir.path() / "empty.csv", "");
  EXPECT_THROW(grnn::load_csv(dir.path() / "empty.csv", {1, TaskKind::fitting, false, "", {}}), grnn::ParseError);
  write(dir.path() / "header_only.csv", "a,b\n");
  EXPECT_THROW(grnn::load_csv(dir.path() / "header_only.csv", {1, TaskKind::fitting, true, "", {}}), grnn::ParseError);
}

TEST(LoadCsv, LabelColumnExpandsToOneHot) {
  const auto ds = grnn::parse_csv("1.0,2.0,0\n3.0,4.0,2\n5.0,6.0,1\n", {2, TaskKind::classification, false, "", {}}, "cls");
  ASSERT_EQ(ds.output_dim(), 3u);
  EXPECT_EQ(ds.targets(0, 0), 1.0);
  EXPECT_EQ(ds.targets(1, 2), 1.0);
  EXPECT_EQ(ds.targets(2, 1), 1.0);
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    const auto row = ds.targets.row(r);
    EXPECT_EQ(std::accumulate(row.begin(), row.end(), 0.0), 1.0);
  }
}

TEST(LoadCsv, ErrorsCarryLineNumbers) {
  const CsvSpec spec{1, TaskKind::fitting, true, "", {}};
  try {
    grnn::parse_csv("x,y\n1,2\n3,abc\n", spec, "bad");
    FAIL();
  } catch (const grnn::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    grnn::parse_csv("x,y\n1,2\n3,4,5\n", spec, "bad");
    FAIL();
  } catch (const grnn::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(grnn::parse_csv("1\n", spec, "narrow"), grnn::ParseError);
  EXPECT_THROW(grnn::parse_csv("1,0.5\n", {1, TaskKind::classification, false, "", {}}, "frac"), grnn::ParseError);
}

TEST(LoadCsv, MultiColumnClassificationMustBeOneHot) {
  EXPECT_THROW(grnn::parse_csv("1,1,1\n", {1, TaskKind::classification, false, "", {}}, "x"), grnn::InvalidArgument);
  EXPECT_NO_THROW(grnn::parse_csv("1,0,1\n", {1, TaskKind::classification, false, "", {}}, "x"));
}

TEST(CsvSpec, ParseAndFormat) {
  const auto spec = grnn::parse_csv_spec("# comment\nname=iris\nn_inputs=4\ntask=classification\nhas_header=true\nnote=stand-in\n");
  EXPECT_EQ(spec.name, "iris");
  EXPECT_EQ(spec.n_inputs, 4u);
  EXPECT_EQ(spec.task, TaskKind::classification);
  EXPECT_TRUE(spec.has_header);
  EXPECT_EQ(spec.notes, std::vector<std::string>{"stand-in"});
  const auto again = grnn::parse_csv_spec(grnn::format_csv_spec(spec));
  EXPECT_EQ(again.n_inputs, 4u);
  EXPECT_EQ(again.notes, spec.notes);
  EXPECT_THROW(grnn::parse_csv_spec("task=fitting\n"), grnn::ParseError);
  EXPECT_THROW(grnn::parse_csv_spec("n_inputs=2\ncolour=blue\n"), grnn::ParseError);
}

TEST(WriteDataset, RoundTripsThroughSidecar) {
  TempDir dir;
  const auto s = grnn::standin_iris(3);
  grnn::write_dataset(s.dataset, dir.path() / "iris.csv", s.notes);
  ASSERT_TRUE(fs::exists(dir.path() / "iris.spec"));
  const auto back = grnn::load_dataset(dir.path() / "iris.csv");
  EXPECT_EQ(back.name, "iris");
  EXPECT_EQ(back.task, TaskKind::classification);
  EXPECT_EQ(back.inputs, s.dataset.inputs);
  EXPECT_EQ(back.targets, s.dataset.targets);
  EXPECT_EQ(back.target_names, s.dataset.target_names);
}

TEST(Normalize, HandExample) {
  grnn::Dataset ds;
  ds.inputs = grnn::Matrix(0, 1);
  ds.targets = grnn::Matrix(0, 1);
  ds.inputs.append_row(grnn::Vector{0.0});
  ds.inputs.append_row(grnn::Vector{2.0});
  ds.targets.append_row(grnn::Vector{5.0});
  ds.targets.append_row(grnn::Vector{6.0});
  const auto [norm, stats] = grnn::normalize(ds);
  EXPECT_EQ(norm.inputs(0, 0), -1.0);
  EXPECT_EQ(norm.inputs(1, 0), 1.0);
  EXPECT_EQ(stats.mean[0], 1.0);
  EXPECT_EQ(stats.stddev[0], 1.0);
  EXPECT_EQ(norm.targets, ds.targets);
}

TEST(Normalize, ZeroMeanUnitStdAndReplay) {
  const auto ds = grnn::standin_engine(1).dataset;
  const auto [norm, stats] = grnn::normalize(ds);
  for (std::size_t j = 0; j < norm.input_dim(); ++j) {
    double mean = 0.0, var = 0.0;
    for (std::size_t r = 0; r < norm.rows(); ++r) mean += norm.inputs(r, j);
    mean /= static_cast<double>(norm.rows());
    for (std::size_t r = 0; r < norm.rows(); ++r) var += std::pow(norm.inputs(r, j) - mean, 2);
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(var / static_cast<double>(norm.rows())), 1.0, 1e-9);
  }
  // replaying the stats on raw rows reproduces the normalized matrix exactly
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    const auto replay = grnn::apply_norm(stats, ds.inputs.row(r));
    for (std::size_t j = 0; j < replay.size(); ++j) EXPECT_EQ(replay[j], norm.inputs(r, j));
  }
  const auto twice = grnn::normalize(norm).first;
  for (std::size_t i = 0; i < twice.inputs.flat().size(); ++i) {
    EXPECT_NEAR(twice.inputs.flat()[i], norm.inputs.flat()[i], 1e-9);
  }
}

TEST(Normalize, ConstantColumnFlagged) {
  grnn::Matrix in(0, 2);
  in.append_row(grnn::Vector{3.0, 1.0});
  in.append_row(grnn::Vector{3.0, 2.0});
  const auto stats = grnn::compute_norm_stats(in);
  EXPECT_TRUE(stats.constant_column[0]);
  EXPECT_FALSE(stats.constant_column[1]);
  EXPECT_EQ(stats.stddev[0], 1.0);
  EXPECT_TRUE(stats.any_constant());
  EXPECT_EQ(grnn::apply_norm(stats, grnn::Vector{3.0, 1.0})[0], 3.0);
}

TEST(Split, SizesDisjointDeterministic) {
  grnn::Dataset ds;
  ds.inputs = grnn::Matrix(0, 1);
  ds.targets = grnn::Matrix(0, 1);
  for (int i = 0; i < 100; ++i) {
    ds.inputs.append_row(grnn::Vector{static_cast<double>(i)});
    ds.targets.append_row(grnn::Vector{0.0});
  }
  const auto [train, test] = grnn::split(ds, 0.8, 7);
  EXPECT_EQ(train.rows(), 80u);
  EXPECT_EQ(test.rows(), 20u);
  std::set<double> seen;
  for (std::size_t r = 0; r < 80; ++r) seen.insert(train.inputs(r, 0));
  for (std::size_t r = 0; r < 20; ++r) seen.insert(test.inputs(r, 0));
  EXPECT_EQ(seen.size(), 100u);
  const auto again = grnn::split(ds, 0.8, 7);
  EXPECT_EQ(again.first.inputs, train.inputs);
  EXPECT_NE(grnn::split(ds, 0.8, 8).first.inputs, train.inputs);
  EXPECT_THROW(grnn::split(ds, 1.0, 7), grnn::InvalidArgument);
  EXPECT_THROW(grnn::split(ds, 0.0, 7), grnn::InvalidArgument);
}

TEST(SyntheticSimplefit, Shape) {
  const auto ds = grnn::synthetic_simplefit();
  EXPECT_EQ(ds.rows(), 94u);
  EXPECT_EQ(ds.inputs(0, 0), 0.0);
  EXPECT_EQ(ds.targets(0, 0), 0.0);
  EXPECT_EQ(ds.inputs(93, 0), 10.0);
  for (std::size_t n : {2u, 7u, 94u, 1000u}) {
    const auto d = grnn::synthetic_simplefit(n);
    for (std::size_t r = 0; r < d.rows(); ++r) {
      EXPECT_LE(std::abs(d.targets(r, 0)), 1.5);
    }
  }
  EXPECT_THROW(grnn::synthetic_simplefit(1), grnn::InvalidArgument);
}

TEST(StandIns, ShapesMatchCatalogue) {
  struct Shape {
    const char* name;
    std::size_t rows, d_in, d_out;
    TaskKind task;
  };
  const Shape expected[] = {
      {"simplefit", 94, 1, 1, TaskKind::fitting},       {"abalone", 4177, 8, 1, TaskKind::fitting},
      {"building", 4208, 14, 3, TaskKind::fitting},     {"cholesterol", 264, 21, 3, TaskKind::fitting},
      {"engine", 1199, 2, 2, TaskKind::fitting},        {"breast_cancer", 699, 9, 2, TaskKind::classification},
      {"iris", 150, 4, 3, TaskKind::classification},    {"thyroid", 7200, 21, 3, TaskKind::classification},
  };
  const auto all = grnn::benchmark_standins(0);
  ASSERT_EQ(all.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& ds = all[i].dataset;
    EXPECT_EQ(ds.name, expected[i].name);
    EXPECT_EQ(ds.rows(), expected[i].rows) << ds.name;
    EXPECT_EQ(ds.input_dim(), expected[i].d_in) << ds.name;
    EXPECT_EQ(ds.output_dim(), expected[i].d_out) << ds.name;
    EXPECT_EQ(ds.task, expected[i].task) << ds.name;
    EXPECT_FALSE(all[i].notes.empty());
  }
}

TEST(Pipeline, LoadNormalizeSplitDeterministic) {
  TempDir dir;
  const auto paths = grnn::write_benchmark_suite(dir.path(), 5);
  ASSERT_EQ(paths.size(), 8u);
  auto run = [&] {
    const auto ds = grnn::load_dataset(paths[4]);
    return grnn::split(grnn::normalize(ds).first, 0.8, 11);
  };
  const auto a = run(), b = run();
  EXPECT_EQ(a.first.inputs, b.first.inputs);
  EXPECT_EQ(a.second.targets, b.second.targets);
}
