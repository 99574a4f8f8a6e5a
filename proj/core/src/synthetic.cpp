#include "grnn/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace grnn {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double normal(Rng& rng, double mean, double sd) {
  return std::normal_distribution<double>(mean, sd)(rng);
}

double round_to(double v, double step) { return std::round(v / step) * step; }

Dataset make(std::string name, TaskKind task, std::vector<std::string> in_names,
             std::vector<std::string> out_names) {
  Dataset ds;
  ds.name = std::move(name);
  ds.task = task;
  ds.inputs = Matrix(0, in_names.size());
  ds.targets = Matrix(0, out_names.size());
  ds.input_names = std::move(in_names);
  ds.target_names = std::move(out_names);
  return ds;
}

std::vector<std::string> numbered(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

void push_class(Dataset& ds, const Vector& x, std::size_t label) {
  Vector t(ds.output_dim(), 0.0);
  t[label] = 1.0;
  ds.inputs.append_row(x);
  ds.targets.append_row(t);
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

Dataset synthetic_simplefit(std::size_t n) {
  if (n < 2) throw InvalidArgument("synthetic_simplefit needs n >= 2");
  Dataset ds = make("simplefit", TaskKind::fitting, {"x"}, {"y"});
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    const double y = std::sin(x) + 0.5 * std::sin(3.0 * x);
    ds.inputs.append_row(std::span(&x, 1));
    ds.targets.append_row(std::span(&y, 1));
  }
  return ds;
}

StandIn standin_simplefit() {
  return {synthetic_simplefit(94),
          {"stand-in: 94 rows, x equally spaced on [0,10], y = sin(x) + 0.5 sin(3x)"}};
}

StandIn standin_abalone(std::uint64_t seed) {
  Rng rng(seed ^ 0xA8A1);
  Dataset ds = make("abalone", TaskKind::fitting,
                    {"sex", "length", "diameter", "height", "whole_weight", "shucked_weight",
                     "viscera_weight", "shell_weight"},
                    {"rings"});
  for (std::size_t i = 0; i < 4177; ++i) {
    const double length = std::clamp(normal(rng, 0.52, 0.12), 0.075, 0.815);
    const double sex = length < 0.42 && uniform(rng, 0, 1) < 0.7 ? 0.0 : (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0);
    const double diameter = std::max(0.05, 0.81 * length + normal(rng, 0, 0.015));
    const double height = std::max(0.01, 0.34 * length + normal(rng, 0, 0.012));
    const double whole = std::max(0.002, 3.3 * length * diameter * height * 4.0 + normal(rng, 0, 0.04));
    const double shucked = std::max(0.001, whole * uniform(rng, 0.38, 0.5));
    const double viscera = std::max(0.0005, whole * uniform(rng, 0.19, 0.25));
    const double shell = std::max(0.0015, whole * uniform(rng, 0.25, 0.33));
    double rings = 3.0 + 20.0 * std::sqrt(shell) + 1.5 * (sex != 0.0) - 8.0 * shucked / (whole + 0.05) +
                   normal(rng, 0, 1.8);
    rings = std::clamp(std::round(rings), 1.0, 29.0);
    ds.inputs.append_row(Vector{sex, round_to(length, 0.005), round_to(diameter, 0.005),
                                round_to(height, 0.005), round_to(whole, 0.0005),
                                round_to(shucked, 0.0005), round_to(viscera, 0.0005),
                                round_to(shell, 0.0005)});
    ds.targets.append_row(Vector{rings});
  }
  return {std::move(ds),
          {"stand-in: 4177 rows, 8 inputs (sex coded -1/0/1 plus seven shell measurements), 1 output (ring count)",
           "generated from an allometric growth model with noise; not the original survey data"}};
}

StandIn standin_building(std::uint64_t seed) {
  Rng rng(seed ^ 0xB1D6);
  Dataset ds = make("building", TaskKind::fitting,
                    {"hour_sin", "hour_cos", "day_sin", "day_cos", "weekend", "temperature",
                     "humidity", "solar", "wind", "occupancy", "temp_lag1", "temp_lag2",
                     "cloud", "season"},
                    {"electricity", "chilled_water", "hot_water"});
  const double two_pi = 2.0 * std::numbers::pi;
  double temp = 18.0;
  double temp_lag1 = temp, temp_lag2 = temp;
  for (std::size_t i = 0; i < 4208; ++i) {
    const double hour = static_cast<double>(i % 24);
    const double day = static_cast<double>((i / 24) % 7);
    const double season = std::sin(two_pi * static_cast<double>(i) / 4208.0);
    const bool weekend = day >= 5.0;
    temp = 0.9 * temp + 0.1 * (18.0 + 8.0 * season + 5.0 * std::sin(two_pi * (hour - 9.0) / 24.0)) +
           normal(rng, 0, 0.6);
    const double humidity = std::clamp(60.0 - 1.2 * (temp - 18.0) + normal(rng, 0, 6.0), 10.0, 100.0);
    const double cloud = std::clamp(uniform(rng, 0, 1) * 0.6 + 0.2 * (humidity > 70.0), 0.0, 1.0);
    const double solar = std::max(0.0, std::sin(two_pi * (hour - 6.0) / 24.0)) * 900.0 * (1.0 - 0.7 * cloud);
    const double wind = std::abs(normal(rng, 4.0, 2.0));
    const double occupancy =
        weekend ? 0.05 : std::clamp(std::exp(-0.5 * std::pow((hour - 13.0) / 3.5, 2)) + normal(rng, 0, 0.03), 0.0, 1.0);

    const double elec = 0.15 + 0.55 * occupancy + 0.002 * std::max(0.0, temp - 22.0) * 10.0 +
                        0.0001 * solar + normal(rng, 0, 0.01);
    const double chilled = 0.05 + 0.03 * std::max(0.0, temp - 16.0) + 0.00025 * solar +
                           0.2 * occupancy + normal(rng, 0, 0.01);
    const double hot = 0.1 + 0.035 * std::max(0.0, 20.0 - temp) + 0.01 * wind +
                       0.1 * occupancy + normal(rng, 0, 0.01);

    ds.inputs.append_row(Vector{std::sin(two_pi * hour / 24.0), std::cos(two_pi * hour / 24.0),
                                std::sin(two_pi * day / 7.0), std::cos(two_pi * day / 7.0),
                                weekend ? 1.0 : 0.0, temp, humidity, solar, wind, occupancy,
                                temp_lag1, temp_lag2, cloud, season});
    ds.targets.append_row(Vector{elec, chilled, hot});
    temp_lag2 = temp_lag1;
    temp_lag1 = temp;
  }
  return {std::move(ds),
          {"stand-in: 4208 hourly rows, 14 inputs (calendar, weather, occupancy), 3 outputs (electricity, chilled water, hot water)",
           "the 14-input/3-output shape is used; the conflicting '4-inputs' description is not"}};
}

StandIn standin_cholesterol(std::uint64_t seed) {
  Rng rng(seed ^ 0xC401);
  Dataset ds = make("cholesterol", TaskKind::fitting, numbered("band", 21), {"ldl", "vldl", "hdl"});
  for (std::size_t i = 0; i < 264; ++i) {
    const double ldl = std::clamp(normal(rng, 3.2, 0.9), 0.8, 6.5);
    const double vldl = std::clamp(normal(rng, 0.7, 0.3), 0.1, 2.0);
    const double hdl = std::clamp(normal(rng, 1.3, 0.35), 0.4, 2.6);
    Vector x(21);
    for (std::size_t b = 0; b < 21; ++b) {
      const double f = static_cast<double>(b) / 20.0;
      // three overlapping absorption peaks plus baseline drift
      x[b] = ldl * std::exp(-std::pow((f - 0.25) / 0.12, 2)) +
             vldl * 1.8 * std::exp(-std::pow((f - 0.55) / 0.1, 2)) +
             hdl * 1.4 * std::exp(-std::pow((f - 0.8) / 0.09, 2)) + 0.2 * f + normal(rng, 0, 0.02);
    }
    ds.inputs.append_row(x);
    ds.targets.append_row(Vector{ldl, vldl, hdl});
  }
  return {std::move(ds),
          {"stand-in: 264 rows, 21 spectral inputs, 3 outputs (LDL, VLDL, HDL in mmol/L)",
           "uses the conventional 264 x 21 -> 3 shape; a 264-output / 4208-row reading is not coherent"}};
}

StandIn standin_engine(std::uint64_t seed) {
  Rng rng(seed ^ 0xE461);
  Dataset ds = make("engine", TaskKind::fitting, {"fuel_rate", "speed"}, {"torque", "nox"});
  for (std::size_t i = 0; i < 1199; ++i) {
    const double fuel = uniform(rng, 0.5, 12.0);     // g/s
    const double speed = uniform(rng, 0.8, 3.6);     // krpm
    const double torque = 0.09 * fuel * (1.0 - 0.04 * std::pow(speed - 2.2, 2)) * 10.0 / (0.6 + 0.25 * speed) +
                          normal(rng, 0, 0.05);      // hundreds of N m
    const double nox = 0.05 * fuel * fuel * (0.7 + 0.3 * speed) / 10.0 + normal(rng, 0, 0.04);
    ds.inputs.append_row(Vector{fuel, speed});
    ds.targets.append_row(Vector{torque, nox});
  }
  return {std::move(ds),
          {"stand-in: 1199 rows, 2 inputs (fuel rate g/s, speed krpm), 2 outputs (torque in 100 N m, NOx in arbitrary units)"}};
}

StandIn standin_breast_cancer(std::uint64_t seed) {
  Rng rng(seed ^ 0xBC09);
  Dataset ds = make("breast_cancer", TaskKind::classification,
                    {"clump", "size_uniformity", "shape_uniformity", "adhesion", "epithelial",
                     "bare_nuclei", "chromatin", "nucleoli", "mitoses"},
                    {"benign", "malignant"});
  for (std::size_t i = 0; i < 699; ++i) {
    const bool malignant = uniform(rng, 0, 1) < 0.345;
    const double severity = malignant ? normal(rng, 6.5, 1.8) : normal(rng, 1.8, 1.0);
    Vector x(9);
    for (double& v : x) v = std::clamp(std::round(severity + normal(rng, 0, 1.6)), 1.0, 10.0);
    x[8] = std::clamp(std::round(1.0 + 0.3 * std::max(0.0, severity - 3.0) + std::abs(normal(rng, 0, 0.8))), 1.0, 10.0);
    push_class(ds, x, malignant ? 1 : 0);
  }
  return {std::move(ds),
          {"stand-in: 699 rows, 9 integer cytology scores in 1..10, 2 classes (benign, malignant)",
           "the '4-input/3-output, 150 observations' description belongs to iris; the conventional 9-input 2-class shape is used"}};
}

StandIn standin_iris(std::uint64_t seed) {
  Rng rng(seed ^ 0x1215);
  Dataset ds = make("iris", TaskKind::classification,
                    {"sepal_length", "sepal_width", "petal_length", "petal_width"},
                    {"setosa", "versicolor", "virginica"});
  const double means[3][4] = {{5.01, 3.43, 1.46, 0.25}, {5.94, 2.77, 4.26, 1.33}, {6.59, 2.97, 5.55, 2.03}};
  const double sds[3][4] = {{0.35, 0.38, 0.17, 0.1}, {0.52, 0.31, 0.47, 0.2}, {0.64, 0.32, 0.55, 0.27}};
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < 50; ++i) {
      Vector x(4);
      for (std::size_t j = 0; j < 4; ++j) x[j] = std::max(0.1, round_to(normal(rng, means[c][j], sds[c][j]), 0.1));
      push_class(ds, x, c);
    }
  }
  return {std::move(ds),
          {"stand-in: 150 rows (50 per class), 4 measurements rounded to 0.1 cm, 3 classes",
           "class-conditional Gaussians matched to published per-class means"}};
}

StandIn standin_thyroid(std::uint64_t seed) {
  Rng rng(seed ^ 0x7A01);
  Dataset ds = make("thyroid", TaskKind::classification,
                    {"age", "sex", "on_thyroxine", "query_thyroxine", "antithyroid", "sick",
                     "pregnant", "surgery", "i131", "query_hypo", "query_hyper", "lithium",
                     "goitre", "tumor", "hypopituitary", "psych", "tsh", "t3", "tt4", "t4u", "fti"},
                    {"normal", "hyper", "subnormal"});
  for (std::size_t i = 0; i < 7200; ++i) {
    Vector x(21);
    x[0] = round_to(std::clamp(normal(rng, 0.52, 0.19), 0.01, 0.97), 0.01);
    for (std::size_t b = 1; b < 16; ++b) x[b] = uniform(rng, 0, 1) < (b == 1 ? 0.3 : 0.06) ? 1.0 : 0.0;
    const double u = uniform(rng, 0, 1);
    const std::size_t label = u < 0.025 ? 1 : (u < 0.077 ? 2 : 0);
    const double tsh = label == 2 ? std::abs(normal(rng, 0.03, 0.015)) : std::abs(normal(rng, 0.002, 0.003));
    const double tt4 = label == 1 ? normal(rng, 0.19, 0.04) : (label == 2 ? normal(rng, 0.06, 0.02) : normal(rng, 0.11, 0.025));
    const double t4u = std::clamp(normal(rng, 0.1 - 0.02 * x[2], 0.015), 0.02, 0.25);
    x[16] = round_to(std::max(0.0, tsh + (label == 0 && x[2] > 0 ? 0.002 : 0.0)), 0.00001);
    x[17] = round_to(std::clamp(normal(rng, 0.02 + 0.1 * sigmoid((tt4 - 0.11) * 30.0) * 0.2, 0.004), 0.0005, 0.1), 0.0001);
    x[18] = round_to(std::clamp(tt4, 0.002, 0.6), 0.001);
    x[19] = round_to(t4u, 0.001);
    x[20] = round_to(std::clamp(x[18] / x[19] * 0.1, 0.002, 0.65), 0.001);
    push_class(ds, x, label);
  }
  return {std::move(ds),
          {"stand-in: 7200 rows, 21 inputs (15 binary flags + 6 scaled continuous), 3 classes (normal, hyper, subnormal)",
           "class priors roughly 92.3 / 2.5 / 5.2 percent"}};
}

std::vector<StandIn> benchmark_standins(std::uint64_t seed) {
  std::vector<StandIn> out;
  out.push_back(standin_simplefit());
  out.push_back(standin_abalone(seed));
  out.push_back(standin_building(seed));
  out.push_back(standin_cholesterol(seed));
  out.push_back(standin_engine(seed));
  out.push_back(standin_breast_cancer(seed));
  out.push_back(standin_iris(seed));
  out.push_back(standin_thyroid(seed));
  for (auto& s : out) s.dataset.validate();
  return out;
}

std::vector<std::filesystem::path> write_benchmark_suite(const std::filesystem::path& dir,
                                                         std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  std::size_t index = 1;
  for (const auto& s : benchmark_standins(seed)) {
    char prefix[8];
    std::snprintf(prefix, sizeof prefix, "%02zu_", index++);
    auto path = dir / (prefix + s.dataset.name + ".csv");
    write_dataset(s.dataset, path, s.notes);
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace grnn
