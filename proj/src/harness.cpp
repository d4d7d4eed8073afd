#include "harness.hpp"

#include <atomic>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

#include "rng.hpp"

namespace dtrack {

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format: " + std::string(name));
}

WorkloadSpec WorkloadSpec::synthetic(Distribution d) {
  WorkloadSpec w;
  w.distribution = d;
  return w;
}

WorkloadSpec WorkloadSpec::trace(std::string path) {
  WorkloadSpec w;
  w.trace_path = std::move(path);
  return w;
}

std::string WorkloadSpec::name() const {
  if (distribution) return std::string(distribution_name(*distribution));
  return "trace:" + std::filesystem::path(trace_path).filename().string();
}

RunReport execute_run(const RunSpec& spec) {
  AlgorithmConfig cfg = spec.config;
  std::unique_ptr<ArrivalSource> source;

  if (spec.workload.distribution) {
    if (cfg.player_count < 1) throw std::invalid_argument("player count must be >= 1");
    source = std::make_unique<SyntheticSource>(*spec.workload.distribution, cfg.player_count,
                                               cfg.seed);
    if (descriptor(cfg.strategy).needs_distribution && cfg.mu.empty()) {
      cfg.mu = exact_probabilities(*spec.workload.distribution, cfg.player_count).values();
    }
  } else {
    std::optional<std::uint32_t> override;
    if (cfg.player_count > 0) override = cfg.player_count;
    auto trace = load_trace(spec.workload.trace_path, override);
    cfg.player_count = trace.player_count();
    if (descriptor(cfg.strategy).needs_distribution && cfg.mu.empty()) {
      cfg.mu = trace_frequencies(trace).values();
    }
    source = std::make_unique<TraceSource>(std::move(trace));
  }

  return run_framework(cfg, *source);
}

std::uint64_t derive_seed(std::uint64_t grid_seed, std::uint64_t cell_index,
                          std::uint32_t replicate) {
  return splitmix64(splitmix64(splitmix64(grid_seed) ^ cell_index) ^ replicate);
}

namespace {

std::string grid_description(const ExperimentGrid& g) {
  std::ostringstream os;
  os << "algos=";
  for (auto a : g.algorithms) os << strategy_name(a) << ',';
  os << ";workloads=";
  for (const auto& w : g.workloads) os << w.name() << ',';
  os << ";n=";
  for (auto n : g.thresholds) os << n << ',';
  os << ";k=";
  for (auto k : g.player_counts) os << k << ',';
  os << ";delta=" << g.delta << ";seed=" << g.seed << ";replicates=" << g.replicates
     << ";backup=" << g.backup_threshold << ";estimate=" << estimate_mode_name(g.estimate_mode);
  return os.str();
}

void validate_grid(const ExperimentGrid& g) {
  if (g.algorithms.empty() || g.workloads.empty() || g.thresholds.empty() ||
      g.player_counts.empty() || g.replicates == 0) {
    throw std::invalid_argument("every grid axis must be nonempty");
  }
  if (!(g.delta > 0.0 && g.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

}  // namespace

std::string grid_hash(const ExperimentGrid& grid) {
  const std::string desc = grid_description(grid);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : desc) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<CellOutcome> run_grid(const ExperimentGrid& grid, unsigned parallelism) {
  validate_grid(grid);

  std::vector<CellOutcome> cells;
  std::uint64_t index = 0;
  for (Strategy algo : grid.algorithms) {
    for (const auto& workload : grid.workloads) {
      for (std::uint64_t n : grid.thresholds) {
        for (std::uint32_t k : grid.player_counts) {
          for (std::uint32_t rep = 0; rep < grid.replicates; ++rep) {
            CellOutcome cell;
            cell.cell_index = index;
            cell.spec.workload = workload;
            auto& cfg = cell.spec.config;
            cfg.strategy = algo;
            cfg.n_threshold = n;
            cfg.player_count = k;
            cfg.delta = grid.delta;
            cfg.backup_threshold = grid.backup_threshold;
            cfg.estimate_mode = grid.estimate_mode;
            cfg.seed = derive_seed(grid.seed, index, rep);
            cells.push_back(std::move(cell));
            ++index;
          }
        }
      }
    }
  }

  unsigned workers = parallelism != 0 ? parallelism : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));

  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        cells[i].report = execute_run(cells[i].spec);
      } catch (const std::exception& e) {
        cells[i].error = e.what();
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return cells;
}

EmitResult emit_reports(std::span<const RunReport> reports, OutputFormat format,
                        const std::filesystem::path& directory, std::string_view tag) {
  if (reports.empty()) throw std::invalid_argument("nothing to emit");
  std::filesystem::create_directories(directory);

  const std::string suffix = format == OutputFormat::Csv ? ".csv" : ".json";
  EmitResult result;
  result.totals = directory / (std::string("totals_") + std::string(tag) + suffix);
  result.series = directory / (std::string("series_") + std::string(tag) + suffix);

  std::ofstream totals(result.totals);
  if (!totals) throw std::runtime_error("cannot write " + result.totals.string());
  std::ofstream series(result.series);
  if (!series) throw std::runtime_error("cannot write " + result.series.string());

  if (format == OutputFormat::Csv) {
    write_totals_csv(totals, reports);
    write_series_csv(series, reports);
  } else {
    totals << reports_to_json(reports) << '\n';
    series << series_to_json(reports) << '\n';
  }
  if (!totals || !series) throw std::runtime_error("failed writing report files");
  return result;
}

}  // namespace dtrack
