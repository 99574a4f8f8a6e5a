#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "grnn/bp.hpp"
#include "grnn/grnn.hpp"
#include "grnn/growth.hpp"

namespace grnn {

// Plain-text model files. Numbers are written with 17 significant digits so a
// read after write reproduces every double exactly.
//
//   grnn v1 d_in=<n> d_out=<m> sigma=<f> n=<N> [novelty_radius=<f> error_gate=<f> max_patterns=<k>]
//   <N rows: inputs then outputs, comma separated>
//   [norm_mean,<d_in values>]
//   [norm_std,<d_in values>]
//   [norm_constant,<d_in 0/1 flags>]
//
//   bpnn v1 d_in=<n> hidden=<h> d_out=<m>
//   w1,<h*n values, row-major>
//   b1,<h values>
//   w2,<m*h values, row-major>
//   b2,<m values>

struct StoredGrnn {
  GrnnModel model;
  std::optional<GrowthPolicy> policy;
};

void write_grnn(std::ostream& out, const GrnnModel& model,
                const std::optional<GrowthPolicy>& policy = std::nullopt);
StoredGrnn read_grnn(std::istream& in);

void write_bpnn(std::ostream& out, const bp::Network& net);
bp::Network read_bpnn(std::istream& in);

void save_grnn(const std::filesystem::path& path, const GrnnModel& model,
               const std::optional<GrowthPolicy>& policy = std::nullopt);
StoredGrnn load_grnn(const std::filesystem::path& path);

/// Shortest-exact decimal: 17 significant digits, %g style.
std::string format_exact(double value);

}  // namespace grnn
