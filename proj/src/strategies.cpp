#include "strategies.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dtrack {

namespace {

constexpr StrategyDescriptor kDescriptors[] = {
    {Strategy::Straightforward, "straightforward", false, false, false},
    {Strategy::UniSlk, "unislk", false, false, false},
    {Strategy::Cmy, "cmy", true, false, false},
    {Strategy::StcSlkKwnDst, "stcslk-kwndst", false, true, false},
    {Strategy::DynSlkKwnDst, "dynslk-kwndst", true, true, false},
    {Strategy::StcSlkLrnDst, "stcslk-lrndst", false, false, true},
    {Strategy::DynSlkLrnDst, "dynslk-lrndst", true, false, true},
};

std::uint64_t floor_to_count(double x) {
  return x <= 0.0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

const StrategyDescriptor& descriptor(Strategy s) {
  return kDescriptors[static_cast<std::size_t>(s)];
}

Strategy parse_strategy(std::string_view name) {
  for (const auto& d : kDescriptors) {
    if (d.name == name) return d.id;
  }
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::string_view strategy_name(Strategy s) { return descriptor(s).name; }

namespace strategies {

std::uint64_t cmy_slack(std::uint64_t n_threshold, std::uint32_t k) {
  return n_threshold / (2ULL * k);
}

std::uint64_t unislk_slack(std::uint64_t n_threshold, std::uint32_t k) {
  return (n_threshold + k - 1) / k;
}

std::vector<std::uint64_t> stcslk_slacks(const ProbVector& mu, std::uint64_t n_threshold,
                                         std::uint32_t k, double delta) {
  const double t = bounds::static_t(static_cast<double>(n_threshold), k, delta);
  std::vector<std::uint64_t> slacks(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double ub = bounds::bernstein_upper_bound(mu[i], t, k, delta);
    slacks[i] = std::max<std::uint64_t>(1, floor_to_count(ub));
  }
  return slacks;
}

PairSlack dynslk_slacks(const ProbVector& mu, std::uint64_t n_threshold, std::uint32_t k,
                        double delta) {
  PairSlack out;
  out.t = bounds::static_t(static_cast<double>(n_threshold), k, delta);
  out.base.resize(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) out.base[i] = floor_to_count(mu[i] * out.t);
  out.slack = std::max<std::uint64_t>(
      1, floor_to_count((static_cast<double>(n_threshold) - out.t) / (2.0 * k)));
  return out;
}

LearnedProbVector estimate_distribution(std::span<const std::uint64_t> cumulative_counts,
                                        double delta) {
  std::uint64_t total = 0;
  for (std::uint64_t c : cumulative_counts) total += c;
  if (total == 0) throw EmptySample("cannot estimate a distribution from zero items");

  LearnedProbVector out;
  out.sample_count = total;
  out.mu_bar.resize(cumulative_counts.size());
  out.mu_hat.resize(cumulative_counts.size());
  for (std::size_t i = 0; i < cumulative_counts.size(); ++i) {
    out.mu_bar[i] = static_cast<double>(cumulative_counts[i]) / static_cast<double>(total);
    out.mu_hat[i] = bounds::learned_mu_upper(out.mu_bar[i], total, delta);
    out.sigma_hat += out.mu_hat[i];
  }
  return out;
}

LearnedRoundParams lrn_round_parameters(const LearnedProbVector& learned,
                                        std::uint64_t n_threshold, std::uint32_t k, double delta,
                                        bool dynamic) {
  LearnedRoundParams out;
  out.dynamic = dynamic;
  out.t = bounds::learned_t(static_cast<double>(n_threshold), learned.sigma_hat, k, delta);
  if (out.t <= 0.0) return out;  // caller falls back to a CMY round

  if (!dynamic) {
    out.thresholds.resize(learned.mu_hat.size());
    for (std::size_t i = 0; i < learned.mu_hat.size(); ++i) {
      const double ub = bounds::learned_ub(learned.mu_hat[i], out.t, k, delta);
      out.thresholds[i] = std::max<std::uint64_t>(1, floor_to_count(ub));
    }
    return out;
  }

  // Bases must fit inside the horizon: sum(b_i) <= floor(t). The naive floors
  // sum to roughly sigma_hat * t > t, so rescale by sigma_hat when they
  // overflow the budget; the rescaled floors sum below t and keep the
  // assignment permutation-equivariant.
  const std::uint64_t budget = floor_to_count(out.t);
  out.base.resize(learned.mu_hat.size());
  std::uint64_t base_sum = 0;
  for (std::size_t i = 0; i < learned.mu_hat.size(); ++i) {
    out.base[i] = floor_to_count(learned.mu_hat[i] * out.t);
    base_sum += out.base[i];
  }
  if (base_sum > budget) {
    for (std::size_t i = 0; i < learned.mu_hat.size(); ++i) {
      out.base[i] = floor_to_count(learned.mu_hat[i] * out.t / learned.sigma_hat);
    }
  }
  out.slack = std::max<std::uint64_t>(
      1, floor_to_count((static_cast<double>(n_threshold) - out.t) / (2.0 * k)));
  return out;
}

bool backup_check(std::uint64_t n_before, std::uint64_t n_after, double threshold_ratio) {
  const double captured =
      static_cast<double>(n_before - n_after) / static_cast<double>(n_before);
  return captured < threshold_ratio;
}

}  // namespace strategies
}  // namespace dtrack
