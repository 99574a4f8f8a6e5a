// bench: benchmark, identification and control harness for the GRNN library.
//
//   bench datasets --out data/
//   bench run --data data/ --sigma auto --out results/
//   bench sysid --plant linear --out sysid.csv
//   bench control --scenario step --out tracking.csv

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>

#include "grnn/bench.hpp"
#include "grnn/control.hpp"
#include "grnn/serialize.hpp"
#include "grnn/synthetic.hpp"
#include "grnn/sysid.hpp"

namespace fs = std::filesystem;

namespace {

unsigned threads_from_env() {
  const char* v = std::getenv("BENCH_THREADS");
  if (!v || !*v) return 1;
  try {
    const long n = std::stol(v);
    return n > 0 ? static_cast<unsigned>(n) : 1u;
  } catch (const std::exception&) {
    std::cerr << "warning: ignoring BENCH_THREADS='" << v << "'\n";
    return 1;
  }
}

struct RunArgs {
  std::string data_dir;
  std::string sigma = "auto";
  std::size_t bp_hidden = 10;
  std::size_t bp_epochs = 500;
  double bp_lr = 0.05;
  std::uint64_t seed = 0;
  std::string out_dir = "results";
  bool predictions = true;
};

int cmd_run(const RunArgs& args) {
  grnn::bench::BenchConfig config;
  config.datasets = grnn::bench::discover_datasets(args.data_dir);
  if (args.sigma != "auto") {
    try {
      config.sigma = std::stod(args.sigma);
    } catch (const std::exception&) {
      std::cerr << "error: --sigma must be a number or 'auto'\n";
      return 2;
    }
  }
  config.bp_hidden = args.bp_hidden;
  config.bp.epochs = args.bp_epochs;
  config.bp.learning_rate = args.bp_lr;
  config.seed = args.seed;
  config.threads = threads_from_env();

  if (config.datasets.empty()) {
    std::cerr << "warning: no datasets (*.csv with .spec) found in " << args.data_dir << "\n";
    return 0;
  }

  const auto runs = grnn::bench::run_benchmark(config);
  std::vector<grnn::bench::BenchResult> results;
  bool any_failed = false;
  fs::create_directories(args.out_dir);
  for (const auto& run : runs) {
    results.push_back(run.result);
    for (const auto& e : run.result.errors) {
      std::cerr << run.result.dataset << ": " << e << "\n";
      any_failed = true;
    }
    if (args.predictions && run.normalized && (run.grnn || run.bp)) {
      grnn::bench::emit_predictions(*run.normalized, run.grnn ? &*run.grnn : nullptr,
                                    run.bp ? &*run.bp : nullptr,
                                    fs::path(args.out_dir) / ("predictions_" + run.result.dataset + ".csv"));
    }
  }
  const fs::path table = fs::path(args.out_dir) / "results.csv";
  grnn::bench::emit_table(results, table);
  std::cout << grnn::bench::format_table(results);
  if (any_failed) std::cerr << "one or more datasets failed\n";
  return any_failed ? 1 : 0;
}

struct SysidArgs {
  std::string plant = "linear";
  double a = 0.5;
  double b = 1.0;
  std::size_t n_y = 1;
  std::size_t n_u = 1;
  std::size_t train_len = 5000;
  std::size_t test_len = 500;
  double u_min = -1.0;
  double u_max = 1.0;
  double sigma = 0.05;
  double y0 = 0.0;
  std::uint64_t seed = 0;
  std::string out = "sysid.csv";
  std::string model_out;
};

int cmd_sysid(const SysidArgs& args) {
  grnn::sysid::PlantSpec spec;
  spec.kind = grnn::sysid::parse_plant_kind(args.plant);
  spec.a = args.a;
  spec.b = args.b;
  const grnn::sysid::LagConfig lags{args.n_y, args.n_u};

  const auto u_train = grnn::sysid::random_excitation(args.train_len, args.u_min, args.u_max, args.seed);
  const auto y_train = grnn::sysid::simulate_plant(spec, u_train, args.y0);
  const auto ds = grnn::sysid::build_sysid_dataset(u_train, y_train, lags);
  const auto model = grnn::train(ds.inputs, ds.targets, args.sigma);

  // test excitation: a slow sinusoid at half the training amplitude, centered in range
  const double mid = 0.5 * (args.u_min + args.u_max);
  const double amp = 0.25 * (args.u_max - args.u_min);
  grnn::Vector u_test(args.test_len);
  for (std::size_t k = 0; k < u_test.size(); ++k) u_test[k] = mid + amp * std::sin(static_cast<double>(k) / 10.0);

  const auto eval = grnn::sysid::evaluate_identifier(model, spec, lags, u_test, args.y0);
  grnn::sysid::write_trajectory_csv(eval, args.out);
  if (!args.model_out.empty()) grnn::save_grnn(args.model_out, model);
  std::cout << "plant=" << grnn::sysid::to_string(spec.kind) << " patterns=" << model.size()
            << " sigma=" << args.sigma << " test_mse=" << grnn::bench::format_sci(eval.mse) << "\n";
  return 0;
}

struct ControlArgs {
  std::string scenario = "step";
  double level = 1.0;
  double period = 10.0;
  std::size_t horizon = 3000;
  std::size_t episodes = 2;
  grnn::control::ControllerConfig config;
  bool no_adapt = false;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::string out = "tracking.csv";
};

int cmd_control(ControlArgs args) {
  args.config.adaptation = !args.no_adapt;
  grnn::control::OnlineController controller(args.config);
  grnn::control::ReferenceFn reference;
  if (args.scenario == "step") {
    reference = grnn::control::step_reference(args.level);
  } else if (args.scenario == "square") {
    reference = grnn::control::square_reference(0.0, args.level, args.period);
  } else {
    std::cerr << "error: unknown scenario '" << args.scenario << "'\n";
    return 2;
  }
  grnn::control::TrackingOptions options;
  options.measurement_noise = args.noise;

  for (std::size_t ep = 1; ep <= args.episodes; ++ep) {
    controller.reset_episode();
    const auto report = grnn::control::run_tracking(controller, reference, args.horizon, args.seed + ep, options);
    fs::path path = args.out;
    if (ep > 1) path.replace_filename(path.stem().string() + "_ep" + std::to_string(ep) + path.extension().string());
    grnn::control::write_tracking_csv(report, path);
    std::cout << "episode=" << ep << " settling_time="
              << (report.settling_time ? std::to_string(*report.settling_time) : std::string("NA"))
              << " steady_state_error=" << grnn::bench::format_sci(report.steady_state_error)
              << " cumulative_abs_error=" << grnn::bench::format_sci(report.cumulative_abs_error)
              << " patterns=" << controller.inverse_model().size() << " -> " << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GRNN benchmark, identification and control harness"};
  app.require_subcommand(1);

  std::string datasets_out = "data";
  std::uint64_t datasets_seed = 0;
  auto* datasets = app.add_subcommand("datasets", "Write the eight synthetic benchmark datasets");
  datasets->add_option("--out", datasets_out, "Output directory");
  datasets->add_option("--seed", datasets_seed, "Generator seed");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Train GRNN and BP on every dataset and tabulate");
  run_cmd->add_option("--data", run.data_dir, "Directory of CSV + .spec files")->required();
  run_cmd->add_option("--sigma", run.sigma, "Smoothing parameter or 'auto'");
  run_cmd->add_option("--bp-hidden", run.bp_hidden, "BP hidden units")->check(CLI::PositiveNumber);
  run_cmd->add_option("--bp-epochs", run.bp_epochs, "BP epochs")->check(CLI::PositiveNumber);
  run_cmd->add_option("--bp-lr", run.bp_lr, "BP learning rate")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed, "Seed for splits and BP init");
  run_cmd->add_option("--out", run.out_dir, "Output directory");
  run_cmd->add_flag("!--no-predictions", run.predictions, "Skip prediction CSVs");

  SysidArgs sysid;
  auto* sysid_cmd = app.add_subcommand("sysid", "Series-parallel GRNN identification of a simulated plant");
  sysid_cmd->add_option("--plant", sysid.plant, "linear | nonlinear | quad");
  sysid_cmd->add_option("--a", sysid.a, "Linear plant pole");
  sysid_cmd->add_option("--b", sysid.b, "Linear plant gain");
  sysid_cmd->add_option("--n-y", sysid.n_y, "Past-output taps");
  sysid_cmd->add_option("--n-u", sysid.n_u, "Past-input taps");
  sysid_cmd->add_option("--train-len", sysid.train_len, "Training sequence length");
  sysid_cmd->add_option("--test-len", sysid.test_len, "Test sequence length");
  sysid_cmd->add_option("--u-min", sysid.u_min, "Excitation lower bound");
  sysid_cmd->add_option("--u-max", sysid.u_max, "Excitation upper bound");
  sysid_cmd->add_option("--sigma", sysid.sigma, "Smoothing parameter");
  sysid_cmd->add_option("--y0", sysid.y0, "Initial plant output");
  sysid_cmd->add_option("--seed", sysid.seed, "Excitation seed");
  sysid_cmd->add_option("--out", sysid.out, "Trajectory CSV (k,u,y,y_hat)");
  sysid_cmd->add_option("--model-out", sysid.model_out, "Optional path for the trained model");

  ControlArgs ctl;
  auto* control_cmd = app.add_subcommand("control", "On-line GRNN altitude control of a simulated quadcopter");
  control_cmd->add_option("--scenario", ctl.scenario, "step | square");
  control_cmd->add_option("--level", ctl.level, "Reference level (m)");
  control_cmd->add_option("--period", ctl.period, "Square-wave period (s)");
  control_cmd->add_option("--horizon", ctl.horizon, "Steps per episode");
  control_cmd->add_option("--episodes", ctl.episodes, "Repeated episodes sharing the learned model");
  control_cmd->add_option("--kp", ctl.config.kp, "Proportional gain");
  control_cmd->add_option("--kd", ctl.config.kd, "Derivative gain");
  control_cmd->add_option("--u-min", ctl.config.u_min, "Thrust lower bound (N)");
  control_cmd->add_option("--u-max", ctl.config.u_max, "Thrust upper bound (N)");
  control_cmd->add_option("--sigma", ctl.config.sigma, "Inverse-model smoothing parameter");
  control_cmd->add_option("--novelty-radius", ctl.config.policy.novelty_radius, "Squared-distance admission radius");
  control_cmd->add_option("--error-gate", ctl.config.policy.error_gate, "Prediction-error admission gate");
  control_cmd->add_option("--max-patterns", ctl.config.policy.max_patterns, "Pattern store capacity");
  control_cmd->add_flag("--no-adapt", ctl.no_adapt, "Disable on-line learning (pure PD)");
  control_cmd->add_option("--noise", ctl.noise, "Altitude measurement noise std-dev (m)");
  control_cmd->add_option("--seed", ctl.seed, "Noise seed");
  control_cmd->add_option("--out", ctl.out, "Tracking CSV (k,t,r,z,u,n_patterns)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*datasets) {
      for (const auto& p : grnn::write_benchmark_suite(datasets_out, datasets_seed)) std::cout << p.string() << "\n";
      return 0;
    }
    if (*run_cmd) return cmd_run(run);
    if (*sysid_cmd) return cmd_sysid(sysid);
    if (*control_cmd) return cmd_control(ctl);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
