#include "grnn/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "grnn/serialize.hpp"

namespace grnn::bench {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void notify(const BenchConfig& config, const std::string& name, Phase phase) {
  if (config.hook) config.hook(name, phase);
}

BenchResult blank_result(const std::string& name, const BenchConfig& config) {
  BenchResult r;
  r.dataset = name;
  r.bp_hidden = config.bp_hidden;
  r.bp_epochs = config.bp.epochs;
  r.bp_learning_rate = config.bp.learning_rate;
  r.seed = config.seed;
  return r;
}

// Everything after loading; `name` has already been reported to the hook.
BenchRun run_loaded(const Dataset& raw, const BenchConfig& config) {
  BenchRun run;
  run.result = blank_result(raw.name, config);
  BenchResult& res = run.result;

  notify(config, raw.name, Phase::normalize_begin);
  Dataset data = normalize(raw).first;
  notify(config, raw.name, Phase::normalize_end);

  try {
    double sigma = 0.0;
    if (config.sigma) {
      sigma = *config.sigma;
    } else {
      notify(config, raw.name, Phase::sigma_begin);
      SigmaSearchOptions opts = config.sigma_search;
      opts.seed = config.seed;
      sigma = select_sigma(data.inputs, data.targets, opts).sigma;
      notify(config, raw.name, Phase::sigma_end);
    }
    res.sigma = sigma;

    notify(config, raw.name, Phase::grnn_timer_start);
    const Stopwatch clock;
    GrnnModel model = train(data.inputs, data.targets, sigma);
    const double elapsed = clock.seconds();
    notify(config, raw.name, Phase::grnn_timer_stop);

    res.grnn_time_s = elapsed;
    res.grnn_mse = training_mse(model, data.inputs, data.targets);
    run.grnn = std::move(model);
  } catch (const std::exception& e) {
    res.errors.push_back(std::string("grnn: ") + e.what());
  }

  try {
    bp::Network init = bp::init_network(data.input_dim(), config.bp_hidden, data.output_dim(), config.seed);
    notify(config, raw.name, Phase::bp_timer_start);
    auto [net, report] = bp::train(std::move(init), data.inputs, data.targets, config.bp);
    notify(config, raw.name, Phase::bp_timer_stop);
    res.bp_time_s = report.wall_time_s;
    res.bp_mse = report.final_mse;
    run.bp = std::move(net);
  } catch (const std::exception& e) {
    notify(config, raw.name, Phase::bp_timer_stop);
    res.errors.push_back(std::string("bp: ") + e.what());
  }

  run.normalized = std::move(data);
  return run;
}

}  // namespace

const char* to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::load_begin: return "load_begin";
    case Phase::load_end: return "load_end";
    case Phase::normalize_begin: return "normalize_begin";
    case Phase::normalize_end: return "normalize_end";
    case Phase::sigma_begin: return "sigma_begin";
    case Phase::sigma_end: return "sigma_end";
    case Phase::grnn_timer_start: return "grnn_timer_start";
    case Phase::grnn_timer_stop: return "grnn_timer_stop";
    case Phase::bp_timer_start: return "bp_timer_start";
    case Phase::bp_timer_stop: return "bp_timer_stop";
  }
  return "unknown";
}

BenchRun run_dataset(const Dataset& dataset, const BenchConfig& config) {
  try {
    return run_loaded(dataset, config);
  } catch (const std::exception& e) {
    BenchRun run;
    run.result = blank_result(dataset.name, config);
    run.result.errors.push_back(e.what());
    return run;
  }
}

std::vector<BenchRun> run_benchmark(const BenchConfig& config) {
  std::vector<BenchRun> runs(config.datasets.size());
  auto work = [&](std::size_t i) {
    const auto& path = config.datasets[i];
    const std::string label = path.stem().string();
    notify(config, label, Phase::load_begin);
    Dataset ds;
    try {
      ds = load_dataset(path);
    } catch (const std::exception& e) {
      notify(config, label, Phase::load_end);
      runs[i].result = blank_result(label, config);
      runs[i].result.errors.push_back(std::string("load: ") + e.what());
      return;
    }
    notify(config, label, Phase::load_end);
    runs[i] = run_dataset(ds, config);
  };

  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, std::max<std::size_t>(runs.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < runs.size(); ++i) work(i);
    return runs;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < runs.size(); i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return runs;
}

std::vector<std::filesystem::path> discover_datasets(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    auto spec = entry.path();
    spec.replace_extension(".spec");
    if (std::filesystem::exists(spec)) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_sci(const std::optional<double>& value) {
  if (!value) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", *value);
  return buf;
}

std::string format_table(const std::vector<BenchResult>& results) {
  std::ostringstream out;
  out << kTableHeader << '\n';
  for (const auto& r : results) {
    out << r.dataset << ',' << format_sci(r.grnn_mse) << ',' << format_sci(r.grnn_time_s) << ','
        << format_sci(r.bp_mse) << ',' << format_sci(r.bp_time_s) << ',' << format_sci(r.sigma)
        << ',' << r.seed << '\n';
  }
  return out.str();
}

void emit_table(const std::vector<BenchResult>& results, const std::filesystem::path& path) {
  if (results.empty()) throw InvalidArgument("emit_table: no results");
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << format_table(results);
  if (!out) throw Error("write failed for " + path.string());
}

std::string format_predictions(const Dataset& dataset, const GrnnModel* grnn, const bp::Network* net) {
  const std::size_t m = dataset.output_dim();
  if (grnn && (grnn->input_dim() != dataset.input_dim() || grnn->output_dim() != m)) {
    throw DimensionError("GRNN model does not match dataset");
  }
  if (net && (net->input_dim() != dataset.input_dim() || net->output_dim() != m)) {
    throw DimensionError("BP network does not match dataset");
  }
  std::ostringstream out;
  out << "row";
  for (const char* prefix : {"target_", "grnn_", "bp_"}) {
    for (std::size_t j = 1; j <= m; ++j) out << ',' << prefix << j;
  }
  out << '\n';

  const std::optional<Matrix> g = grnn ? std::optional(grnn->predict_batch(dataset.inputs)) : std::nullopt;
  const std::optional<Matrix> b = net ? std::optional(bp::predict_batch(*net, dataset.inputs)) : std::nullopt;
  for (std::size_t r = 0; r < dataset.rows(); ++r) {
    out << r;
    for (double v : dataset.targets.row(r)) out << ',' << format_exact(v);
    for (std::size_t j = 0; j < m; ++j) out << ',' << (g ? format_exact((*g)(r, j)) : "NA");
    for (std::size_t j = 0; j < m; ++j) out << ',' << (b ? format_exact((*b)(r, j)) : "NA");
    out << '\n';
  }
  return out.str();
}

void emit_predictions(const Dataset& dataset, const GrnnModel* grnn, const bp::Network* net,
                      const std::filesystem::path& path) {
  const std::string text = format_predictions(dataset, grnn, net);
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace grnn::bench
