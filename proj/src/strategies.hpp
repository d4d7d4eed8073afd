#ifndef DTRACK_STRATEGIES_HPP
#define DTRACK_STRATEGIES_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "bounds.hpp"

namespace dtrack {

struct EmptySample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Strategy : std::uint8_t {
  Straightforward,
  UniSlk,
  Cmy,
  StcSlkKwnDst,
  DynSlkKwnDst,
  StcSlkLrnDst,
  DynSlkLrnDst,
};

inline constexpr Strategy kAllStrategies[] = {
    Strategy::Straightforward, Strategy::UniSlk,       Strategy::Cmy,
    Strategy::StcSlkKwnDst,    Strategy::DynSlkKwnDst, Strategy::StcSlkLrnDst,
    Strategy::DynSlkLrnDst,
};

// The three characteristics an algorithm plugs into the framework: how slacks
// are formed, how a player decides to notify, and how many notifications end
// a round (1 or k).
struct StrategyDescriptor {
  Strategy id;
  std::string_view name;
  bool ell_is_k;            // false: one notification ends the round
  bool needs_distribution;  // requires mu up front
  bool learns;              // estimates mu from earlier rounds
};

const StrategyDescriptor& descriptor(Strategy s);
Strategy parse_strategy(std::string_view name);
std::string_view strategy_name(Strategy s);

namespace strategies {

// floor(N / 2k); every player notifies each time its counter grows by this
// much, and the k-th notification ends the round.
std::uint64_t cmy_slack(std::uint64_t n_threshold, std::uint32_t k);

// ceil(N / k); a player notifies once its counter reaches the slack, and the
// first notification ends the round.
std::uint64_t unislk_slack(std::uint64_t n_threshold, std::uint32_t k);

// Per-player notify-once thresholds floor(UB_i) at the closed-form horizon t,
// guarded to >= 1 so every round makes progress. Flooring only tightens the
// correctness constraint sum(s_i) <= N.
std::vector<std::uint64_t> stcslk_slacks(const ProbVector& mu, std::uint64_t n_threshold,
                                         std::uint32_t k, double delta);

struct PairSlack {
  std::vector<std::uint64_t> base;  // b_i = floor(mu_i * t)
  std::uint64_t slack = 0;          // shared, max(1, floor((N - t) / 2k))
  double t = 0.0;
};

// Base-plus-period slacks: a player ignores its first b_i items, then
// notifies each time its surplus over b_i grows by the shared slack.
PairSlack dynslk_slacks(const ProbVector& mu, std::uint64_t n_threshold, std::uint32_t k,
                        double delta);

// Empirical frequencies plus their upper confidence bounds from cumulative
// per-player counts.
LearnedProbVector estimate_distribution(std::span<const std::uint64_t> cumulative_counts,
                                        double delta);

struct LearnedRoundParams {
  double t = 0.0;
  bool dynamic = false;
  std::vector<std::uint64_t> thresholds;  // static variant
  std::vector<std::uint64_t> base;        // dynamic variant
  std::uint64_t slack = 0;                // dynamic variant
};

// Known-distribution slack formulas evaluated with the learned upper bounds
// and the deflated horizon learned_t.
LearnedRoundParams lrn_round_parameters(const LearnedProbVector& learned,
                                        std::uint64_t n_threshold, std::uint32_t k, double delta,
                                        bool dynamic);

// Capture-ratio heuristic: true means the last round tracked too small a
// fraction of its threshold and the run should fall back to CMY for good.
// Capturing exactly the threshold fraction does not trigger (strictly below).
bool backup_check(std::uint64_t n_before, std::uint64_t n_after, double threshold_ratio);

}  // namespace strategies
}  // namespace dtrack

#endif
