#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "grnn/data.hpp"

namespace grnn {

/// n points with x equally spaced on [0, 10] and y = sin(x) + 0.5 sin(3x).
/// Throws InvalidArgument for n < 2.
Dataset synthetic_simplefit(std::size_t n = 94);

/// A generated dataset plus the provenance notes written to its sidecar.
struct StandIn {
  Dataset dataset;
  std::vector<std::string> notes;
};

// Deterministic generators shaped like the eight classic regression /
// classification demo sets. Each is a stand-in, not the original data.
StandIn standin_simplefit();
StandIn standin_abalone(std::uint64_t seed);
StandIn standin_building(std::uint64_t seed);
StandIn standin_cholesterol(std::uint64_t seed);
StandIn standin_engine(std::uint64_t seed);
StandIn standin_breast_cancer(std::uint64_t seed);
StandIn standin_iris(std::uint64_t seed);
StandIn standin_thyroid(std::uint64_t seed);

/// All eight stand-ins in table order.
std::vector<StandIn> benchmark_standins(std::uint64_t seed);

/// Writes every stand-in as `<nn>_<name>.csv` + `.spec` into dir (created if
/// missing). Returns the CSV paths in order.
std::vector<std::filesystem::path> write_benchmark_suite(const std::filesystem::path& dir,
                                                         std::uint64_t seed);

}  // namespace grnn
