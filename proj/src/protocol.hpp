#ifndef DTRACK_PROTOCOL_HPP
#define DTRACK_PROTOCOL_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "strategies.hpp"
#include "workload.hpp"

// Coordinator/player state machines for the notifications-to-end framework.
// A run proceeds in rounds: broadcast slacks, consume arrivals until the
// ell-th notification, collect every counter, shrink the threshold, repeat.
// The alarm fires exactly when the threshold reaches zero; the simulation is
// synchronous and lossless, so message accounting is exact.

namespace dtrack {

enum class MessageKind : std::uint8_t {
  SlackGrant,
  Notification,
  CollectRequest,
  CounterReport,
  ModeSwitch,
  ItemReport,
};

inline constexpr std::uint32_t kCoordinator = 0xFFFFFFFF;

// One unit of communication; the payload holds at most two machine words.
struct Message {
  MessageKind kind;
  std::uint32_t sender = kCoordinator;
  std::array<std::uint64_t, 2> payload{};
  std::uint8_t payload_len = 0;
};

struct MessageTally {
  std::uint64_t slack_grants = 0;
  std::uint64_t notifications = 0;
  std::uint64_t collect_requests = 0;
  std::uint64_t counter_reports = 0;
  std::uint64_t mode_switches = 0;
  std::uint64_t item_reports = 0;

  std::uint64_t total() const {
    return slack_grants + notifications + collect_requests + counter_reports + mode_switches +
           item_reports;
  }
  void count(const Message& m);
  MessageTally& operator+=(const MessageTally& other);
  MessageTally operator-(const MessageTally& other) const;
  bool operator==(const MessageTally&) const = default;
};

// The mechanism actually used in a round; learned strategies run a plain CMY
// round first, and every strategy finishes with a straightforward round.
enum class RoundMode : std::uint8_t { Straightforward, Cmy, UniSlk, StcSlk, DynSlk };

std::string_view round_mode_name(RoundMode m);
RoundMode parse_round_mode(std::string_view name);

struct RoundStats {
  std::uint32_t round_number = 0;
  RoundMode mode = RoundMode::Straightforward;
  std::uint64_t slack = 0;  // shared slack; 0 for per-player threshold rounds
  std::uint64_t items_captured = 0;
  std::uint64_t remaining_after = 0;
  MessageTally messages;

  bool operator==(const RoundStats&) const = default;
};

enum class PlayerMode : std::uint8_t { Idle, Slacked, Straightforward };

struct PlayerState {
  std::uint32_t id = 0;
  std::uint64_t counter = 0;
  std::uint64_t slack = 0;  // notify threshold, or period above the base
  std::uint64_t base = 0;
  bool periodic = false;  // CMY/DynSlk style; otherwise notify once at slack
  std::uint32_t notifications_sent = 0;
  PlayerMode mode = PlayerMode::Idle;

  // Counts one arrival; true when the player must notify the coordinator.
  bool on_item() {
    counter += 1;
    if (mode != PlayerMode::Slacked) return false;
    if (periodic) return counter > base && (counter - base) % slack == 0;
    return counter == slack;
  }
};

struct CoordinatorState {
  std::uint64_t remaining = 0;
  std::uint32_t round_number = 0;
  std::uint32_t ell = 0;
  std::uint32_t notifications_received = 0;
  MessageTally tally;
  Strategy active_strategy = Strategy::Cmy;

  // Counts one message crossing the coordinator, in either direction.
  void record(const Message& m);
};

// Slack broadcast for one round, covering all four slack-round mechanisms.
struct SlackAssignment {
  RoundMode mode = RoundMode::Cmy;
  std::uint32_t ell = 1;
  bool periodic = false;
  std::uint64_t shared_slack = 0;          // CMY/UniSlk/DynSlk
  std::vector<std::uint64_t> thresholds;   // per player, threshold rounds
  std::vector<std::uint64_t> bases;        // per player, periodic rounds
};

std::vector<PlayerState> make_players(const SlackAssignment& a, std::uint32_t k);

// Runs one slack round to its ell-th notification and collects all counters.
// Message count is exactly k grants + notifications + k collects + k reports.
RoundStats execute_round(const SlackAssignment& a, CoordinatorState& coordinator,
                         std::vector<PlayerState>& players, ArrivalSource& source);

// Consumes the whole remaining threshold, one report per item. The k-message
// mode-switch broadcast applies only when the framework switches into this
// mode; a run configured as straightforward from the start skips it.
RoundStats execute_straightforward(CoordinatorState& coordinator,
                                   std::vector<PlayerState>& players, ArrivalSource& source,
                                   bool announce_switch);

enum class EstimateMode : std::uint8_t { Cumulative, FirstRound };

EstimateMode parse_estimate_mode(std::string_view name);
std::string_view estimate_mode_name(EstimateMode m);

struct AlgorithmConfig {
  Strategy strategy = Strategy::Cmy;
  std::uint64_t n_threshold = 0;
  std::uint32_t player_count = 0;
  double delta = 0.01;
  double backup_threshold = 0.75;
  std::uint64_t seed = 0;
  EstimateMode estimate_mode = EstimateMode::Cumulative;
  std::vector<double> mu;  // required by the known-distribution strategies

  bool operator==(const AlgorithmConfig&) const = default;
};

struct SeriesPoint {
  std::uint64_t cumulative_messages = 0;
  double untracked_percent = 0.0;

  bool operator==(const SeriesPoint&) const = default;
};

struct RunReport {
  AlgorithmConfig config;
  std::string workload;
  std::string generator;
  std::uint64_t alarm_index = 0;
  std::uint64_t total_messages = 0;
  std::vector<RoundStats> rounds;
  std::vector<SeriesPoint> untracked_series;

  bool operator==(const RunReport&) const = default;
};

// Drives the full framework run: consumes exactly n_threshold items from the
// source and raises the alarm on the last one.
RunReport run_framework(const AlgorithmConfig& config, ArrivalSource& source);

}  // namespace dtrack

#endif
