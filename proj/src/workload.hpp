#ifndef DTRACK_WORKLOAD_HPP
#define DTRACK_WORKLOAD_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bounds.hpp"

namespace dtrack {

struct StreamExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPlayerId : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Distribution : std::uint8_t { Uniform, Gaussian, Zipfian, Exponential };

Distribution parse_distribution(std::string_view name);
std::string_view distribution_name(Distribution d);

// A deterministic stream of player ids in [0, k). Synthetic sources are
// infinite; trace sources end.
class ArrivalSource {
 public:
  virtual ~ArrivalSource() = default;

  virtual std::optional<std::uint32_t> next() = 0;
  virtual std::uint32_t player_count() const = 0;
  virtual std::string describe() const = 0;
  virtual std::string_view generator() const = 0;
  virtual std::uint64_t seed() const = 0;
};

// The multinomial cell probabilities a synthetic sampler realizes, so the
// known-distribution strategies and the sampler agree exactly. The Gaussian
// case integrates the normal density over each unit cell, conditioned on
// landing in [0, k).
ProbVector exact_probabilities(Distribution d, std::uint32_t player_count);

class SyntheticSource final : public ArrivalSource {
 public:
  SyntheticSource(Distribution d, std::uint32_t player_count, std::uint64_t seed);

  std::optional<std::uint32_t> next() override;
  std::uint32_t player_count() const override { return player_count_; }
  std::string describe() const override { return std::string(distribution_name(kind_)); }
  std::string_view generator() const override;
  std::uint64_t seed() const override { return seed_; }

 private:
  Distribution kind_;
  std::uint32_t player_count_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::vector<double> cdf_;  // Zipfian/Exponential inverse-CDF table
};

class TraceSource final : public ArrivalSource {
 public:
  TraceSource(std::vector<std::uint32_t> ids, std::uint32_t player_count,
              std::string description = "trace");

  std::optional<std::uint32_t> next() override;
  std::uint32_t player_count() const override { return player_count_; }
  std::string describe() const override { return description_; }
  std::string_view generator() const override { return "trace"; }
  std::uint64_t seed() const override { return 0; }

  const std::vector<std::uint32_t>& ids() const { return ids_; }

 private:
  std::vector<std::uint32_t> ids_;
  std::uint32_t player_count_;
  std::string description_;
  std::size_t cursor_ = 0;
};

// Trace format: one decimal player id per line; blank lines and lines
// starting with '#' are ignored. Player count is max id + 1 unless overridden.
TraceSource load_trace(const std::filesystem::path& path,
                       std::optional<std::uint32_t> player_count_override = {});

void write_trace(const std::filesystem::path& path, std::span<const std::uint32_t> ids);

// Whole-trace per-player frequencies, used as the "known" distribution when
// replaying a trace under a distribution-aware strategy.
ProbVector trace_frequencies(const TraceSource& trace);

}  // namespace dtrack

#endif
