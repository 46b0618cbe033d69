#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "argminci/config.hpp"
#include "argminci/csv.hpp"
#include "argminci/error.hpp"
#include "argminci/report.hpp"
#include "argminci/simulation.hpp"
#include "argminci/statistic.hpp"

namespace {

using namespace argminci;

int exit_code_for(const Error& e) {
  return e.code() == errc::degenerate_variance ? 3 : 2;
}

// Console summaries round to four decimals; files keep exact values.
std::string rounded(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", value);
  return buf;
}

int threads_from_env() {
  const char* raw = std::getenv("ARGMIN_CI_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1) return 0;
  return static_cast<int>(value);
}

struct AnalyzeOptions {
  std::string input;
  bool header = false;
  double alpha = 0.05;
  std::string folds = "2";
  std::string lambda = "auto";
  std::string variance = "out";
  std::uint64_t seed = 0;
  std::string tie_break = "lowest";
  std::string degenerate = "error";
  std::string output;
};

int run_analyze(const AnalyzeOptions& opt) {
  SampleMatrix x = parse_matrix_csv(opt.input, opt.header);

  ArgminTask task;
  task.alpha = opt.alpha;
  if (opt.folds == "loo") {
    task.folds = x.rows();
  } else {
    try {
      task.folds = std::stoi(opt.folds);
    } catch (const std::exception&) {
      fail(errc::bad_argument, "--folds expects an integer or 'loo'");
    }
  }
  if (opt.lambda == "auto") {
    task.lambda_mode = LambdaMode::auto_per_dimension;
  } else if (opt.lambda == "auto-global") {
    task.lambda_mode = LambdaMode::auto_global;
  } else {
    try {
      task.lambda = std::stod(opt.lambda);
    } catch (const std::exception&) {
      fail(errc::bad_argument,
           "--lambda expects a number, 'auto' or 'auto-global'");
    }
    task.lambda_mode = LambdaMode::fixed;
  }
  if (opt.variance == "out") task.variance = VarianceKind::out;
  else if (opt.variance == "in") task.variance = VarianceKind::in_fold;
  else fail(errc::bad_argument, "--variance expects 'out' or 'in'");
  if (opt.tie_break == "lowest") task.tie_break = TieBreak::lowest_index;
  else if (opt.tie_break == "random") task.tie_break = TieBreak::seeded_random;
  else fail(errc::bad_argument, "--tie-break expects 'lowest' or 'random'");
  if (opt.degenerate == "error") task.degenerate = DegeneratePolicy::error;
  else if (opt.degenerate == "include")
    task.degenerate = DegeneratePolicy::conservative_include;
  else fail(errc::bad_argument, "--degenerate expects 'error' or 'include'");
  task.seed = opt.seed;

  ConfidenceResult result = confidence_set(x, task);
  nlohmann::json report = analysis_to_json(result, task, x);

  std::cout << "n=" << x.rows() << " p=" << x.cols()
            << " alpha=" << format_double(task.alpha) << '\n';
  std::cout << "confidence set (" << result.confidence_set.size() << " of "
            << x.cols() << "):";
  for (int r : result.confidence_set)
    std::cout << ' ' << x.labels[static_cast<std::size_t>(r - 1)];
  std::cout << '\n';
  for (const auto& w : result.warnings) std::cout << "warning: " << w << '\n';

  if (!opt.output.empty()) {
    std::ofstream out(opt.output);
    if (!out) fail(errc::bad_argument, opt.output + ": cannot write");
    out << report.dump(2) << '\n';
  } else {
    std::cout << report.dump(2) << '\n';
  }
  return 0;
}

ExperimentSpec load_spec(const std::string& path, ExperimentKind expected,
                         const char* command) {
  ExperimentSpec spec = parse_experiment_spec(IniFile::parse_file(path));
  if (spec.kind != expected)
    fail(errc::bad_config, path + ": experiment.kind does not match the '" +
                               std::string(command) + "' command");
  return spec;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::bad_argument, path + ": cannot write");
  out << text;
}

int run_experiment_command(const std::string& config_path,
                           std::string out_prefix, int threads,
                           ExperimentKind kind, const char* command) {
  ExperimentSpec spec = load_spec(config_path, kind, command);
  spec.config.threads = threads;
  if (out_prefix.empty()) {
    out_prefix = config_path;
    auto dot = out_prefix.rfind('.');
    if (dot != std::string::npos && out_prefix.find('/', dot) == std::string::npos)
      out_prefix.resize(dot);
  }

  ExperimentResults results = kind == ExperimentKind::compare
                                  ? run_experiment(spec.config)
                                  : run_coverage(spec.config);
  std::ostringstream csv;
  write_experiment_csv(csv, results);
  write_text_file(out_prefix + ".csv", csv.str());
  write_text_file(out_prefix + ".json",
                  experiment_summary_json(results).dump(2) + "\n");

  for (const auto& summary : results.summaries) {
    std::cout << method_name(summary.method) << ": nu_bar="
              << rounded(summary.nu_bar) << " mean_false_negatives="
              << rounded(summary.mean_false_negatives);
    if (summary.failed_repetitions > 0)
      std::cout << " failed=" << summary.failed_repetitions;
    std::cout << '\n';
  }
  std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".json\n";
  return 0;
}

int run_calibrate(const std::string& config_path, std::string out_prefix,
                  int threads) {
  ExperimentSpec spec =
      load_spec(config_path, ExperimentKind::calibrate, "calibrate");
  (void)threads;
  if (out_prefix.empty()) {
    out_prefix = config_path;
    auto dot = out_prefix.rfind('.');
    if (dot != std::string::npos && out_prefix.find('/', dot) == std::string::npos)
      out_prefix.resize(dot);
  }
  const ExperimentConfig& config = spec.config;
  GaussianSampler sampler(config.landscape, config.rho);
  FoldScheme scheme = fold_partition(config.n, config.folds);
  TuningSchedule schedule = TuningSchedule::for_folds(config.n, config.folds);

  std::vector<std::pair<int, LambdaTrace>> traces;
  for (int rep = 0; rep < config.repetitions; ++rep) {
    RngStream rng = RngStream::derived(
        config.seed, {stream::data, static_cast<std::uint64_t>(rep)});
    SampleMatrix x = sampler.sample(config.n, rng);
    const std::uint64_t tuning_seed = derive_seed(
        config.seed, {stream::tuning, static_cast<std::uint64_t>(rep)});
    for (int r = 0; r < x.cols(); ++r)
      traces.emplace_back(
          rep + 1,
          select_lambda(x, r, scheme, schedule,
                        derive_seed(tuning_seed,
                                    {stream::tuning, static_cast<std::uint64_t>(r)})));
  }

  std::ostringstream csv;
  write_calibration_csv(csv, traces);
  write_text_file(out_prefix + ".csv", csv.str());
  write_text_file(out_prefix + ".json",
                  calibration_summary_json(traces, config).dump(2) + "\n");
  std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".json\n";
  return 0;
}

int run_stability(const std::string& config_path, std::string out_prefix,
                  int threads) {
  ExperimentSpec spec =
      load_spec(config_path, ExperimentKind::stability, "stability");
  (void)threads;
  if (out_prefix.empty()) {
    out_prefix = config_path;
    auto dot = out_prefix.rfind('.');
    if (dot != std::string::npos && out_prefix.find('/', dot) == std::string::npos)
      out_prefix.resize(dot);
  }
  const ExperimentConfig& config = spec.config;
  const StabilitySweep& sweep = spec.stability;
  GaussianSampler sampler(config.landscape, config.rho);

  std::vector<StabilitySample> samples;
  for (int n : sweep.n_values) {
    const double lambda = sweep.lambda_sqrt_n
                              ? std::sqrt(static_cast<double>(n))
                              : sweep.lambda;
    const int folds = sweep.loo ? n : sweep.folds;
    samples.push_back(perturb_stability(
        sampler, n, lambda, folds, sweep.r - 1, sweep.reps,
        derive_seed(config.seed, {stream::data, static_cast<std::uint64_t>(n)})));
  }

  std::ostringstream csv;
  write_stability_csv(csv, samples);
  write_text_file(out_prefix + ".csv", csv.str());
  nlohmann::json summary = stability_summary_json(samples);
  write_text_file(out_prefix + ".json", summary.dump(2) + "\n");
  if (summary.contains("slope_grad2"))
    std::cout << "second-order slope: "
              << rounded(summary["slope_grad2"].get<double>()) << '\n';
  std::cout << "wrote " << out_prefix << ".csv and " << out_prefix << ".json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"argmin confidence sets via cross-validated exponential weighting"};
  app.require_subcommand(1);

  AnalyzeOptions analyze_opt;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "confidence set for the columns of a CSV sample matrix");
  analyze->add_option("--input", analyze_opt.input, "CSV matrix path")
      ->required();
  analyze->add_flag("--header", analyze_opt.header,
                    "first row holds column labels");
  analyze->add_option("--alpha", analyze_opt.alpha, "miscoverage level");
  analyze->add_option("--folds", analyze_opt.folds, "fold count or 'loo'");
  analyze->add_option("--lambda", analyze_opt.lambda,
                      "weighting temperature, 'auto' or 'auto-global'");
  analyze->add_option("--variance", analyze_opt.variance, "'out' or 'in'");
  analyze->add_option("--seed", analyze_opt.seed, "seed for tuning streams");
  analyze->add_option("--tie-break", analyze_opt.tie_break,
                      "'lowest' or 'random'");
  analyze->add_option("--degenerate", analyze_opt.degenerate,
                      "'error' or 'include'");
  analyze->add_option("--output", analyze_opt.output, "JSON report path");

  int threads = threads_from_env();
  std::string config_path;
  std::string out_prefix;
  auto add_experiment = [&](const char* name, const char* help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", config_path, "experiment description (INI)")
        ->required();
    cmd->add_option("--out-prefix", out_prefix,
                    "output path prefix (default: config path without suffix)");
    cmd->add_option("--threads", threads,
                    "worker threads (default: ARGMIN_CI_THREADS or all cores)");
    return cmd;
  };
  CLI::App* simulate =
      add_experiment("simulate", "run one method over seeded repetitions");
  CLI::App* compare =
      add_experiment("compare", "run several methods on shared draws");
  CLI::App* calibrate =
      add_experiment("calibrate", "emit tuning traces for seeded draws");
  CLI::App* stability =
      add_experiment("stability", "perturbation response across sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(analyze_opt);
    if (simulate->parsed())
      return run_experiment_command(config_path, out_prefix, threads,
                                    ExperimentKind::simulate, "simulate");
    if (compare->parsed())
      return run_experiment_command(config_path, out_prefix, threads,
                                    ExperimentKind::compare, "compare");
    if (calibrate->parsed())
      return run_calibrate(config_path, out_prefix, threads);
    if (stability->parsed())
      return run_stability(config_path, out_prefix, threads);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
