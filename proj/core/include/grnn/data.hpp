#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "grnn/grnn.hpp"
#include "grnn/norm.hpp"
#include "grnn/types.hpp"

namespace grnn {

enum class TaskKind { fitting, classification };

const char* to_string(TaskKind task) noexcept;
TaskKind parse_task(const std::string& text);

/// Named input/target table. Classification targets are one-hot rows.
struct Dataset {
  std::string name;
  TaskKind task = TaskKind::fitting;
  Matrix inputs;
  Matrix targets;
  std::vector<std::string> input_names;
  std::vector<std::string> target_names;

  std::size_t rows() const noexcept { return inputs.rows(); }
  std::size_t input_dim() const noexcept { return inputs.cols(); }
  std::size_t output_dim() const noexcept { return targets.cols(); }

  std::vector<Pattern> patterns() const;

  /// Throws if row counts differ, any entry is non-finite, or a
  /// classification row is not one-hot.
  void validate() const;
};

/// Contents of the `.spec` sidecar that accompanies every dataset CSV.
struct CsvSpec {
  std::size_t n_inputs = 0;
  TaskKind task = TaskKind::fitting;
  bool has_header = false;
  /// Optional display name; defaults to the CSV basename.
  std::string name;
  /// Free-form `note=` lines, kept for provenance of stand-in data.
  std::vector<std::string> notes;
};

/// Parses `key=value` lines. Blank lines and lines starting with '#' are skipped.
CsvSpec parse_csv_spec(const std::string& text);
CsvSpec read_csv_spec(const std::filesystem::path& path);
std::string format_csv_spec(const CsvSpec& spec);

/// Reads a comma-separated table. Each row holds n_inputs inputs followed by
/// the outputs. For classification, a single trailing column is read as a
/// non-negative integer class label and expanded to one-hot; otherwise the
/// trailing columns must already be one-hot. Errors carry line numbers.
Dataset load_csv(const std::filesystem::path& path, const CsvSpec& spec);
Dataset parse_csv(const std::string& text, const CsvSpec& spec, const std::string& name);

/// load_csv with the spec read from the sidecar (`<stem>.spec` next to the CSV).
Dataset load_dataset(const std::filesystem::path& csv_path);

/// Writes the dataset as CSV with a header line (inputs then targets) plus its
/// sidecar spec. Values use 17 significant digits.
void write_dataset(const Dataset& dataset, const std::filesystem::path& csv_path,
                   const std::vector<std::string>& notes = {});

/// Z-scores every input column with population statistics; targets untouched.
std::pair<Dataset, NormStats> normalize(const Dataset& dataset);
Dataset apply_norm(const NormStats& stats, const Dataset& dataset);

/// Seeded permutation of [0, rows) cut at round(train_fraction * rows).
/// Both parts are nonempty when rows >= 2.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    std::size_t rows, double train_fraction, std::uint64_t seed);

Dataset select_rows(const Dataset& dataset, const std::vector<std::size_t>& rows);

/// Disjoint, exhaustive, seeded train/test split. 0 < train_fraction < 1.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  std::uint64_t seed);

}  // namespace grnn
