// Command-line front end for the tracking simulator. Talks to the library
// exclusively through the C interface in dtrack.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dtrack.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

constexpr const char* kTraceFormatHelp =
    "Trace file format: one decimal player id per line; blank lines and lines "
    "starting with '#' are ignored. Player count defaults to max id + 1.";

int fail_with(dt_status status) {
  std::cerr << "error: " << dt_last_error() << " (" << dt_status_name(status) << ")\n";
  return status == DT_ERROR_INVALID_ARGUMENT ? kExitConfigError : kExitRuntimeError;
}

#define CHECK_DT(call)                                  \
  do {                                                  \
    const dt_status status_ = (call);                   \
    if (status_ != DT_OK) return fail_with(status_);    \
  } while (0)

// One probability per line, '#' comments allowed, must sum to 1.
std::vector<double> read_mu_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--mu", "cannot open file: " + path);
  std::vector<double> mu;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    try {
      mu.push_back(std::stod(line.substr(begin)));
    } catch (const std::exception&) {
      throw CLI::ValidationError(
          "--mu", path + ":" + std::to_string(line_number) + ": expected a probability");
    }
  }
  return mu;
}

struct RunOptions {
  std::string algorithm = "cmy";
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  double delta = 0.01;
  std::string distribution;
  std::string trace;
  std::uint64_t seed = 0;
  double backup_threshold = 0.75;
  std::string mu_file;
  std::string estimate_mode = "cumulative";
  std::string format = "csv";
  std::string out_dir;
};

void add_run_options(CLI::App& cmd, RunOptions& opt, bool trace_only) {
  cmd.add_option("--algo", opt.algorithm, "Algorithm to run")->capture_default_str();
  cmd.add_option("--n", opt.n, "Threshold to track")->required();
  auto* k_opt = cmd.add_option("--k", opt.k, "Number of players");
  cmd.add_option("--delta", opt.delta, "Failure probability in (0,1)")->capture_default_str();
  cmd.add_option("--seed", opt.seed, "Random seed for synthetic workloads")
      ->capture_default_str();
  cmd.add_option("--backup-threshold", opt.backup_threshold,
                 "Capture ratio below which a run falls back to cmy")
      ->capture_default_str();
  cmd.add_option("--mu", opt.mu_file,
                 "File with one arrival probability per line (known-distribution algorithms)");
  cmd.add_option("--estimate-mode", opt.estimate_mode,
                 "Learned estimation: cumulative or first-round")
      ->capture_default_str();
  cmd.add_option("--format", opt.format, "Report format: csv or json")->capture_default_str();
  cmd.add_option("--out", opt.out_dir, "Directory for report files");

  auto* trace_opt = cmd.add_option("--trace", opt.trace, "Replay a trace file");
  if (trace_only) {
    trace_opt->required();
  } else {
    auto* dist_opt =
        cmd.add_option("--dist", opt.distribution,
                       "Synthetic distribution: uniform, gaussian, zipfian, exponential");
    dist_opt->excludes(trace_opt);
    trace_opt->excludes(dist_opt);
    k_opt->required(false);
  }
}

int run_single(const RunOptions& opt) {
  dt_config* config = dt_config_new();
  if (config == nullptr) return kExitRuntimeError;
  struct Cleanup {
    dt_config* c;
    ~Cleanup() { dt_config_free(c); }
  } cleanup{config};

  CHECK_DT(dt_config_set_algorithm(config, opt.algorithm.c_str()));
  CHECK_DT(dt_config_set_threshold(config, opt.n));
  CHECK_DT(dt_config_set_players(config, opt.k));
  CHECK_DT(dt_config_set_delta(config, opt.delta));
  CHECK_DT(dt_config_set_seed(config, opt.seed));
  CHECK_DT(dt_config_set_backup_threshold(config, opt.backup_threshold));
  CHECK_DT(dt_config_set_estimate_mode(config, opt.estimate_mode.c_str()));

  if (!opt.trace.empty()) {
    CHECK_DT(dt_config_set_trace(config, opt.trace.c_str()));
  } else if (!opt.distribution.empty()) {
    CHECK_DT(dt_config_set_distribution(config, opt.distribution.c_str()));
  } else {
    std::cerr << "error: choose a workload with --dist or --trace\n";
    return kExitConfigError;
  }
  if (opt.trace.empty() && opt.k == 0) {
    std::cerr << "error: --k is required for synthetic workloads\n";
    return kExitConfigError;
  }

  if (!opt.mu_file.empty()) {
    const auto mu = read_mu_file(opt.mu_file);
    CHECK_DT(dt_config_set_mu(config, mu.data(), static_cast<uint32_t>(mu.size())));
  }

  dt_report* report = nullptr;
  CHECK_DT(dt_run(config, &report));
  struct ReportCleanup {
    dt_report* r;
    ~ReportCleanup() { dt_report_free(r); }
  } report_cleanup{report};

  std::cout << "total_messages=" << dt_report_total_messages(report) << "\n"
            << "rounds=" << dt_report_round_count(report) << "\n"
            << "alarm_index=" << dt_report_alarm_index(report) << "\n";

  if (!opt.out_dir.empty()) {
    char* summary = nullptr;
    CHECK_DT(dt_report_emit(report, opt.format.c_str(), opt.out_dir.c_str(), &summary));
    std::cout << summary << "\n";
    dt_string_free(summary);
  }
  return kExitOk;
}

struct SweepOptions {
  std::vector<std::string> algorithms;
  std::vector<std::string> distributions;
  std::vector<std::string> traces;
  std::vector<std::uint64_t> thresholds;
  std::vector<std::uint32_t> player_counts;
  double delta = 0.01;
  std::uint64_t seed = 0;
  std::uint32_t replicates = 1;
  double backup_threshold = 0.75;
  std::string estimate_mode = "cumulative";
  std::string format = "csv";
  std::string out_dir = ".";
};

int run_sweep(const SweepOptions& opt) {
  dt_grid* grid = dt_grid_new();
  if (grid == nullptr) return kExitRuntimeError;
  struct Cleanup {
    dt_grid* g;
    ~Cleanup() { dt_grid_free(g); }
  } cleanup{grid};

  for (const auto& a : opt.algorithms) CHECK_DT(dt_grid_add_algorithm(grid, a.c_str()));
  for (const auto& d : opt.distributions) CHECK_DT(dt_grid_add_distribution(grid, d.c_str()));
  for (const auto& t : opt.traces) CHECK_DT(dt_grid_add_trace(grid, t.c_str()));
  for (auto n : opt.thresholds) CHECK_DT(dt_grid_add_threshold(grid, n));
  for (auto k : opt.player_counts) CHECK_DT(dt_grid_add_players(grid, k));
  CHECK_DT(dt_grid_set_delta(grid, opt.delta));
  CHECK_DT(dt_grid_set_seed(grid, opt.seed));
  CHECK_DT(dt_grid_set_replicates(grid, opt.replicates));
  CHECK_DT(dt_grid_set_backup_threshold(grid, opt.backup_threshold));
  CHECK_DT(dt_grid_set_estimate_mode(grid, opt.estimate_mode.c_str()));

  char* summary = nullptr;
  CHECK_DT(dt_grid_run(grid, opt.format.c_str(), opt.out_dir.c_str(), &summary));
  std::cout << summary << "\n";
  const bool had_errors = std::string(summary).find("\"errors\": []") == std::string::npos;
  dt_string_free(summary);
  return had_errors ? kExitRuntimeError : kExitOk;
}

int run_selfcheck() {
  int failures = 0;
  char* text = nullptr;
  CHECK_DT(dt_selfcheck(&failures, &text));
  std::cout << text;
  dt_string_free(text);
  std::cout << (failures == 0 ? "selfcheck passed\n" : "selfcheck FAILED\n");
  return failures == 0 ? kExitOk : kExitRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dtrack: threshold tracking simulator"};
  app.footer(kTraceFormatHelp);
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run_cmd = app.add_subcommand("run", "Run one algorithm on one workload");
  add_run_options(*run_cmd, run_opt, false);

  RunOptions replay_opt;
  auto* replay_cmd = app.add_subcommand("replay", "Replay a trace file");
  add_run_options(*replay_cmd, replay_opt, true);

  SweepOptions sweep_opt;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of configurations");
  sweep_cmd->add_option("--algo", sweep_opt.algorithms, "Algorithms (repeatable)")->required();
  sweep_cmd->add_option("--dist", sweep_opt.distributions, "Distributions (repeatable)");
  sweep_cmd->add_option("--trace", sweep_opt.traces, "Trace files (repeatable)");
  sweep_cmd->add_option("--n", sweep_opt.thresholds, "Thresholds (repeatable)")->required();
  sweep_cmd->add_option("--k", sweep_opt.player_counts, "Player counts (repeatable)")
      ->required();
  sweep_cmd->add_option("--delta", sweep_opt.delta, "Failure probability")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep_opt.seed, "Grid seed; per-run seeds derive from it")
      ->capture_default_str();
  sweep_cmd->add_option("--seeds", sweep_opt.replicates, "Replicates per cell")
      ->capture_default_str();
  sweep_cmd->add_option("--backup-threshold", sweep_opt.backup_threshold, "Backup capture ratio")
      ->capture_default_str();
  sweep_cmd->add_option("--estimate-mode", sweep_opt.estimate_mode,
                        "cumulative or first-round")
      ->capture_default_str();
  sweep_cmd->add_option("--format", sweep_opt.format, "csv or json")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_opt.out_dir, "Output directory")->capture_default_str();

  auto* selfcheck_cmd =
      app.add_subcommand("selfcheck", "Verify bound formulas against reference values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run_cmd->parsed()) return run_single(run_opt);
    if (replay_cmd->parsed()) return run_single(replay_opt);
    if (sweep_cmd->parsed()) return run_sweep(sweep_opt);
    if (selfcheck_cmd->parsed()) return run_selfcheck();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitConfigError;
}
