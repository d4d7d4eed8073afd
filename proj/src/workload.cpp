#include "workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "rng.hpp"

namespace dtrack {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::vector<double> normalized(std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  for (double& w : weights) w /= sum;
  return weights;
}

std::vector<double> cell_weights(Distribution d, std::uint32_t k) {
  std::vector<double> w(k);
  switch (d) {
    case Distribution::Uniform:
      std::fill(w.begin(), w.end(), 1.0);
      break;
    case Distribution::Gaussian: {
      const double mean = k / 2.0;
      const double sigma = k / 6.0;
      for (std::uint32_t i = 0; i < k; ++i) {
        w[i] = normal_cdf((i + 1.0 - mean) / sigma) - normal_cdf((i - mean) / sigma);
      }
      break;
    }
    case Distribution::Zipfian:
      for (std::uint32_t i = 0; i < k; ++i) w[i] = 1.0 / std::sqrt(i + 1.0);
      break;
    case Distribution::Exponential:
      for (std::uint32_t i = 0; i < k; ++i) w[i] = std::exp(-static_cast<double>(i));
      break;
  }
  return w;
}

}  // namespace

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "gaussian") return Distribution::Gaussian;
  if (name == "zipfian") return Distribution::Zipfian;
  if (name == "exponential") return Distribution::Exponential;
  throw std::invalid_argument("unknown distribution: " + std::string(name));
}

std::string_view distribution_name(Distribution d) {
  switch (d) {
    case Distribution::Uniform: return "uniform";
    case Distribution::Gaussian: return "gaussian";
    case Distribution::Zipfian: return "zipfian";
    case Distribution::Exponential: return "exponential";
  }
  return "?";
}

ProbVector exact_probabilities(Distribution d, std::uint32_t player_count) {
  if (player_count < 1) throw std::invalid_argument("player count must be >= 1");
  if (player_count == 1) return ProbVector({1.0});
  return ProbVector(normalized(cell_weights(d, player_count)));
}

SyntheticSource::SyntheticSource(Distribution d, std::uint32_t player_count, std::uint64_t seed)
    : kind_(d), player_count_(player_count), seed_(seed), engine_(seed) {
  if (player_count < 1) throw std::invalid_argument("player count must be >= 1");
  if (d == Distribution::Zipfian || d == Distribution::Exponential) {
    const auto probs = exact_probabilities(d, player_count).values();
    cdf_.resize(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      cdf_[i] = acc;
    }
    cdf_.back() = 1.0;
  }
}

std::string_view SyntheticSource::generator() const { return kGeneratorId; }

std::optional<std::uint32_t> SyntheticSource::next() {
  switch (kind_) {
    case Distribution::Uniform:
      return uniform_below(engine_, player_count_);
    case Distribution::Gaussian: {
      const double mean = player_count_ / 2.0;
      const double sigma = player_count_ / 6.0;
      // Draws outside [0, k) are discarded and redrawn; with +-3 sigma
      // covering the whole range the acceptance rate stays above 99%.
      for (;;) {
        const double x = mean + sigma * standard_normal(engine_);
        if (x >= 0.0 && x < static_cast<double>(player_count_)) {
          return static_cast<std::uint32_t>(std::floor(x));
        }
      }
    }
    case Distribution::Zipfian:
    case Distribution::Exponential: {
      const double u = uniform_unit(engine_);
      const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
      const auto idx = static_cast<std::uint32_t>(it - cdf_.begin());
      return idx < player_count_ ? idx : player_count_ - 1;
    }
  }
  return std::nullopt;
}

TraceSource::TraceSource(std::vector<std::uint32_t> ids, std::uint32_t player_count,
                         std::string description)
    : ids_(std::move(ids)), player_count_(player_count), description_(std::move(description)) {
  if (player_count_ < 1) throw std::invalid_argument("player count must be >= 1");
  for (std::uint32_t id : ids_) {
    if (id >= player_count_) {
      throw InvalidPlayerId("trace id " + std::to_string(id) + " outside [0, " +
                            std::to_string(player_count_) + ")");
    }
  }
}

std::optional<std::uint32_t> TraceSource::next() {
  if (cursor_ >= ids_.size()) return std::nullopt;
  return ids_[cursor_++];
}

TraceSource load_trace(const std::filesystem::path& path,
                       std::optional<std::uint32_t> player_count_override) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace file: " + path.string());

  std::vector<std::uint32_t> ids;
  std::string line;
  std::size_t line_number = 0;
  std::uint32_t max_id = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(begin, end - begin + 1);
    long long value = 0;
    try {
      std::size_t consumed = 0;
      value = std::stoll(token, &consumed);
      if (consumed != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": expected a player id, got '" + token + "'");
    }
    if (value < 0) {
      throw InvalidPlayerId(path.string() + ":" + std::to_string(line_number) +
                            ": negative player id " + std::to_string(value));
    }
    const auto id = static_cast<std::uint32_t>(value);
    max_id = std::max(max_id, id);
    ids.push_back(id);
  }

  const std::uint32_t inferred = ids.empty() ? 1 : max_id + 1;
  const std::uint32_t k = player_count_override.value_or(inferred);
  return TraceSource(std::move(ids), k, "trace:" + path.filename().string());
}

void write_trace(const std::filesystem::path& path, std::span<const std::uint32_t> ids) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path.string());
  for (std::uint32_t id : ids) out << id << '\n';
  if (!out) throw std::runtime_error("failed writing trace file: " + path.string());
}

ProbVector trace_frequencies(const TraceSource& trace) {
  std::vector<std::uint64_t> counts(trace.player_count(), 0);
  for (std::uint32_t id : trace.ids()) counts[id] += 1;
  const double total = static_cast<double>(trace.ids().size());
  if (total == 0) throw std::invalid_argument("cannot derive frequencies from an empty trace");
  std::vector<double> mu(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) mu[i] = counts[i] / total;
  return ProbVector(std::move(mu));
}

}  // namespace dtrack
