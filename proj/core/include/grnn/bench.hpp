#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grnn/bp.hpp"
#include "grnn/data.hpp"
#include "grnn/grnn.hpp"

namespace grnn::bench {

/// Milestones inside one dataset's run, in the order they occur.
enum class Phase {
  load_begin,
  load_end,
  normalize_begin,
  normalize_end,
  sigma_begin,
  sigma_end,
  grnn_timer_start,
  grnn_timer_stop,
  bp_timer_start,
  bp_timer_stop,
};

const char* to_string(Phase phase) noexcept;

/// Observer for run_benchmark. Called from the worker that runs the dataset.
using PhaseHook = std::function<void(const std::string& dataset, Phase phase)>;

struct BenchConfig {
  std::vector<std::filesystem::path> datasets;
  /// Fixed smoothing parameter, or empty for holdout grid search.
  std::optional<double> sigma;
  SigmaSearchOptions sigma_search;
  std::size_t bp_hidden = 10;
  bp::TrainOptions bp;
  std::uint64_t seed = 0;
  /// Datasets run concurrently up to this many at once.
  unsigned threads = 1;
  PhaseHook hook;
};

struct BenchResult {
  std::string dataset;
  std::optional<double> grnn_mse;
  std::optional<double> grnn_time_s;
  std::optional<double> bp_mse;
  std::optional<double> bp_time_s;
  std::optional<double> sigma;
  std::size_t bp_hidden = 0;
  std::size_t bp_epochs = 0;
  double bp_learning_rate = 0.0;
  std::uint64_t seed = 0;
  /// Empty on success; otherwise what went wrong.
  std::vector<std::string> errors;

  bool failed() const noexcept { return !errors.empty(); }
};

/// A result plus the trained artifacts, for prediction dumps.
struct BenchRun {
  BenchResult result;
  std::optional<Dataset> normalized;
  std::optional<GrnnModel> grnn;
  std::optional<bp::Network> bp;
};

/// For each dataset: load, normalize, select sigma (if auto), train GRNN
/// (timed), training MSE, train BP (timed), training MSE. A failure in one
/// dataset is recorded in its row and does not stop the others. Output order
/// follows config.datasets.
std::vector<BenchRun> run_benchmark(const BenchConfig& config);

/// Same protocol on an in-memory dataset (load phases are skipped).
BenchRun run_dataset(const Dataset& dataset, const BenchConfig& config);

/// Every `*.csv` in dir that has a sibling `.spec`, sorted by file name.
std::vector<std::filesystem::path> discover_datasets(const std::filesystem::path& dir);

/// Table header, exactly as written by emit_table.
inline constexpr const char* kTableHeader = "dataset,grnn_mse,grnn_time_s,bp_mse,bp_time_s,sigma,seed";

/// Formats with %.3e (4 significant digits), or NA.
std::string format_sci(const std::optional<double>& value);

std::string format_table(const std::vector<BenchResult>& results);
/// Throws InvalidArgument for an empty list and Error if the path is unwritable.
void emit_table(const std::vector<BenchResult>& results, const std::filesystem::path& path);

/// `row,target_1..m,grnn_1..m,bp_1..m`. A missing model yields NA columns.
std::string format_predictions(const Dataset& dataset, const GrnnModel* grnn, const bp::Network* net);
void emit_predictions(const Dataset& dataset, const GrnnModel* grnn, const bp::Network* net,
                      const std::filesystem::path& path);

}  // namespace grnn::bench
