#ifndef DTRACK_HARNESS_HPP
#define DTRACK_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "protocol.hpp"
#include "report.hpp"

namespace dtrack {

enum class OutputFormat : std::uint8_t { Csv, Json };

OutputFormat parse_output_format(std::string_view name);

// A workload axis entry: a named synthetic distribution or a trace file.
struct WorkloadSpec {
  std::optional<Distribution> distribution;
  std::string trace_path;

  static WorkloadSpec synthetic(Distribution d);
  static WorkloadSpec trace(std::string path);
  std::string name() const;
};

// One fully-specified run: algorithm config plus a workload. The known-
// distribution strategies get their mu filled automatically (exact sampler
// probabilities for synthetic workloads, whole-trace frequencies for traces)
// unless the config already carries one.
struct RunSpec {
  AlgorithmConfig config;
  WorkloadSpec workload;
};

RunReport execute_run(const RunSpec& spec);

struct ExperimentGrid {
  std::vector<Strategy> algorithms;
  std::vector<WorkloadSpec> workloads;
  std::vector<std::uint64_t> thresholds;
  std::vector<std::uint32_t> player_counts;
  double delta = 0.01;
  std::uint64_t seed = 0;       // grid seed; per-run seeds are derived from it
  std::uint32_t replicates = 1;
  double backup_threshold = 0.75;
  EstimateMode estimate_mode = EstimateMode::Cumulative;
};

struct CellOutcome {
  std::uint64_t cell_index = 0;
  RunSpec spec;
  std::optional<RunReport> report;
  std::string error;  // empty on success
};

// Runs every cell of algorithms x workloads x thresholds x player counts x
// replicates. Cells execute concurrently but the result order is the flat
// cell order; a failing cell is recorded, not thrown.
std::vector<CellOutcome> run_grid(const ExperimentGrid& grid, unsigned parallelism = 0);

// Per-run seed: splitmix64 over the grid seed, then the cell index, then the
// replicate, so every cell gets an independent reproducible stream.
std::uint64_t derive_seed(std::uint64_t grid_seed, std::uint64_t cell_index,
                          std::uint32_t replicate);

// FNV-1a over the canonical grid description; names output files without
// timestamps so rerunning the same grid overwrites the same files.
std::string grid_hash(const ExperimentGrid& grid);

struct EmitResult {
  std::filesystem::path totals;
  std::filesystem::path series;
};

// Writes one totals file and one series file into the directory. The JSON
// totals file holds full reports and parses back losslessly.
EmitResult emit_reports(std::span<const RunReport> reports, OutputFormat format,
                        const std::filesystem::path& directory, std::string_view tag);

}  // namespace dtrack

#endif
