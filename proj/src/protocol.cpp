#include "protocol.hpp"

#include <optional>
#include <string>

namespace dtrack {

void MessageTally::count(const Message& m) {
  switch (m.kind) {
    case MessageKind::SlackGrant: slack_grants += 1; break;
    case MessageKind::Notification: notifications += 1; break;
    case MessageKind::CollectRequest: collect_requests += 1; break;
    case MessageKind::CounterReport: counter_reports += 1; break;
    case MessageKind::ModeSwitch: mode_switches += 1; break;
    case MessageKind::ItemReport: item_reports += 1; break;
  }
}

MessageTally& MessageTally::operator+=(const MessageTally& other) {
  slack_grants += other.slack_grants;
  notifications += other.notifications;
  collect_requests += other.collect_requests;
  counter_reports += other.counter_reports;
  mode_switches += other.mode_switches;
  item_reports += other.item_reports;
  return *this;
}

MessageTally MessageTally::operator-(const MessageTally& other) const {
  return MessageTally{slack_grants - other.slack_grants,
                      notifications - other.notifications,
                      collect_requests - other.collect_requests,
                      counter_reports - other.counter_reports,
                      mode_switches - other.mode_switches,
                      item_reports - other.item_reports};
}

void CoordinatorState::record(const Message& m) {
  tally.count(m);
  if (m.kind == MessageKind::Notification) notifications_received += 1;
}

std::string_view round_mode_name(RoundMode m) {
  switch (m) {
    case RoundMode::Straightforward: return "straightforward";
    case RoundMode::Cmy: return "cmy";
    case RoundMode::UniSlk: return "unislk";
    case RoundMode::StcSlk: return "stcslk";
    case RoundMode::DynSlk: return "dynslk";
  }
  return "?";
}

RoundMode parse_round_mode(std::string_view name) {
  for (RoundMode m : {RoundMode::Straightforward, RoundMode::Cmy, RoundMode::UniSlk,
                      RoundMode::StcSlk, RoundMode::DynSlk}) {
    if (round_mode_name(m) == name) return m;
  }
  throw std::invalid_argument("unknown round mode: " + std::string(name));
}

EstimateMode parse_estimate_mode(std::string_view name) {
  if (name == "cumulative") return EstimateMode::Cumulative;
  if (name == "first-round") return EstimateMode::FirstRound;
  throw std::invalid_argument("unknown estimate mode: " + std::string(name));
}

std::string_view estimate_mode_name(EstimateMode m) {
  return m == EstimateMode::Cumulative ? "cumulative" : "first-round";
}

std::vector<PlayerState> make_players(const SlackAssignment& a, std::uint32_t k) {
  std::vector<PlayerState> players(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    auto& p = players[i];
    p.id = i;
    p.mode = PlayerMode::Slacked;
    p.periodic = a.periodic;
    if (a.periodic) {
      p.slack = a.shared_slack;
      p.base = a.bases.empty() ? 0 : a.bases[i];
    } else {
      p.slack = a.thresholds.empty() ? a.shared_slack : a.thresholds[i];
    }
  }
  return players;
}

namespace {

std::uint32_t pull(ArrivalSource& source, std::uint32_t k) {
  const auto id = source.next();
  if (!id) throw StreamExhausted("arrival stream ended before the threshold was reached");
  if (*id >= k) {
    throw InvalidPlayerId("player id " + std::to_string(*id) + " outside [0, " +
                          std::to_string(k) + ")");
  }
  return *id;
}

Message slack_grant(const PlayerState& p) {
  Message m{MessageKind::SlackGrant, kCoordinator};
  if (p.periodic && p.base > 0) {
    m.payload = {p.base, p.slack};
    m.payload_len = 2;
  } else {
    m.payload = {p.slack, 0};
    m.payload_len = 1;
  }
  return m;
}

}  // namespace

RoundStats execute_round(const SlackAssignment& a, CoordinatorState& coordinator,
                         std::vector<PlayerState>& players, ArrivalSource& source) {
  const auto k = static_cast<std::uint32_t>(players.size());
  RoundStats stats;
  stats.round_number = coordinator.round_number;
  stats.mode = a.mode;
  stats.slack = a.mode == RoundMode::StcSlk ? 0 : a.shared_slack;
  coordinator.ell = a.ell;
  coordinator.notifications_received = 0;
  const MessageTally entering = coordinator.tally;

  for (const auto& p : players) coordinator.record(slack_grant(p));

  for (;;) {
    const std::uint32_t id = pull(source, k);
    if (players[id].on_item()) {
      players[id].notifications_sent += 1;
      coordinator.record(Message{MessageKind::Notification, id});
      if (coordinator.notifications_received == a.ell) break;  // ends the round on the spot
    }
  }

  for (auto& p : players) {
    coordinator.record(Message{MessageKind::CollectRequest, kCoordinator});
    coordinator.record(Message{MessageKind::CounterReport, p.id, {p.counter, 0}, 1});
    stats.items_captured += p.counter;
    p.mode = PlayerMode::Idle;
  }

  stats.messages = coordinator.tally - entering;
  return stats;
}

RoundStats execute_straightforward(CoordinatorState& coordinator,
                                   std::vector<PlayerState>& players, ArrivalSource& source,
                                   bool announce_switch) {
  const auto k = static_cast<std::uint32_t>(players.size());
  RoundStats stats;
  stats.round_number = coordinator.round_number;
  stats.mode = RoundMode::Straightforward;
  const MessageTally entering = coordinator.tally;

  if (announce_switch) {
    for (std::uint32_t i = 0; i < k; ++i) {
      coordinator.record(Message{MessageKind::ModeSwitch, kCoordinator});
    }
  }
  for (auto& p : players) p.mode = PlayerMode::Straightforward;

  const std::uint64_t need = coordinator.remaining;
  for (std::uint64_t j = 0; j < need; ++j) {
    const std::uint32_t id = pull(source, k);
    players[id].counter += 1;
    coordinator.record(Message{MessageKind::ItemReport, id, {1, 0}, 1});
  }

  stats.items_captured = need;
  stats.messages = coordinator.tally - entering;
  return stats;
}

namespace {

struct RoundPlan {
  SlackAssignment assignment;
  bool straightforward = false;
  bool data_dependent = false;  // subject to the capture-ratio backup check
};

SlackAssignment cmy_assignment(std::uint64_t remaining, std::uint32_t k) {
  SlackAssignment a;
  a.mode = RoundMode::Cmy;
  a.ell = k;
  a.periodic = true;
  a.shared_slack = strategies::cmy_slack(remaining, k);
  return a;
}

RoundPlan plan_round(const AlgorithmConfig& cfg, std::uint64_t remaining,
                     std::uint32_t round_number, const SwitchCutoffs& cutoffs,
                     const std::optional<ProbVector>& known_mu,
                     const std::optional<LearnedProbVector>& learned, bool backup_to_cmy) {
  const std::uint32_t k = cfg.player_count;
  RoundPlan plan;

  if (cfg.strategy == Strategy::Straightforward || remaining <= cutoffs.straightforward_cutoff) {
    plan.straightforward = true;
    return plan;
  }

  const auto& desc = descriptor(cfg.strategy);
  const bool below_cmy_cutoff =
      (desc.needs_distribution || desc.learns) &&
      static_cast<double>(remaining) <= cutoffs.cmy_cutoff;
  const bool first_learning_round = desc.learns && round_number == 1;

  if (cfg.strategy == Strategy::Cmy || backup_to_cmy || below_cmy_cutoff ||
      first_learning_round) {
    plan.assignment = cmy_assignment(remaining, k);
    return plan;
  }

  switch (cfg.strategy) {
    case Strategy::UniSlk: {
      plan.assignment.mode = RoundMode::UniSlk;
      plan.assignment.ell = 1;
      plan.assignment.periodic = false;
      plan.assignment.shared_slack = strategies::unislk_slack(remaining, k);
      return plan;
    }
    case Strategy::StcSlkKwnDst: {
      const double t = bounds::static_t(static_cast<double>(remaining), k, cfg.delta);
      if (t <= 0.0) break;
      plan.assignment.mode = RoundMode::StcSlk;
      plan.assignment.ell = 1;
      plan.assignment.thresholds = strategies::stcslk_slacks(*known_mu, remaining, k, cfg.delta);
      plan.data_dependent = true;
      return plan;
    }
    case Strategy::DynSlkKwnDst: {
      auto pair = strategies::dynslk_slacks(*known_mu, remaining, k, cfg.delta);
      if (pair.t <= 0.0 ||
          static_cast<double>(remaining) - pair.t < 2.0 * static_cast<double>(k)) {
        break;  // degenerate tolerance budget, run the round as plain CMY
      }
      plan.assignment.mode = RoundMode::DynSlk;
      plan.assignment.ell = k;
      plan.assignment.periodic = true;
      plan.assignment.shared_slack = pair.slack;
      plan.assignment.bases = std::move(pair.base);
      plan.data_dependent = true;
      return plan;
    }
    case Strategy::StcSlkLrnDst:
    case Strategy::DynSlkLrnDst: {
      const bool dynamic = cfg.strategy == Strategy::DynSlkLrnDst;
      auto params = strategies::lrn_round_parameters(*learned, remaining, k, cfg.delta, dynamic);
      if (params.t <= 0.0 ||
          (dynamic &&
           static_cast<double>(remaining) - params.t < 2.0 * static_cast<double>(k))) {
        break;
      }
      plan.assignment.mode = dynamic ? RoundMode::DynSlk : RoundMode::StcSlk;
      plan.assignment.ell = dynamic ? k : 1;
      plan.assignment.periodic = dynamic;
      plan.assignment.shared_slack = params.slack;
      plan.assignment.thresholds = std::move(params.thresholds);
      plan.assignment.bases = std::move(params.base);
      plan.data_dependent = true;
      return plan;
    }
    default: break;
  }

  plan.assignment = cmy_assignment(remaining, k);
  return plan;
}

void validate_config(const AlgorithmConfig& cfg) {
  if (cfg.n_threshold < 1) throw std::invalid_argument("threshold must be >= 1");
  if (cfg.player_count < 1) throw std::invalid_argument("player count must be >= 1");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (!(cfg.backup_threshold > 0.0 && cfg.backup_threshold <= 1.0)) {
    throw std::invalid_argument("backup threshold must lie in (0, 1]");
  }
  if (descriptor(cfg.strategy).needs_distribution && cfg.mu.empty()) {
    throw std::invalid_argument(std::string(strategy_name(cfg.strategy)) +
                                " requires an explicit distribution");
  }
}

}  // namespace

RunReport run_framework(const AlgorithmConfig& cfg, ArrivalSource& source) {
  validate_config(cfg);
  const std::uint32_t k = cfg.player_count;
  const auto& desc = descriptor(cfg.strategy);

  std::optional<ProbVector> known_mu;
  if (desc.needs_distribution) {
    known_mu.emplace(cfg.mu);
    if (known_mu->size() != k) {
      throw std::invalid_argument("distribution length does not match the player count");
    }
  }
  const auto cutoffs = bounds::switch_thresholds(k, cfg.delta, desc.learns);

  RunReport report;
  report.config = cfg;
  report.workload = source.describe();
  report.generator = std::string(source.generator());

  CoordinatorState coordinator;
  coordinator.active_strategy = cfg.strategy;
  const std::uint64_t initial = cfg.n_threshold;
  std::uint64_t remaining = initial;
  report.untracked_series.push_back({0, 100.0});

  std::vector<std::uint64_t> cumulative_counts(k, 0);
  std::optional<LearnedProbVector> learned;
  bool backup_to_cmy = false;

  while (remaining > 0) {
    coordinator.round_number += 1;
    coordinator.remaining = remaining;

    const RoundPlan plan = plan_round(cfg, remaining, coordinator.round_number, cutoffs,
                                      known_mu, learned, backup_to_cmy);
    RoundStats stats;
    if (plan.straightforward) {
      std::vector<PlayerState> players(k);
      for (std::uint32_t i = 0; i < k; ++i) players[i].id = i;
      const bool announce = cfg.strategy != Strategy::Straightforward;
      stats = execute_straightforward(coordinator, players, source, announce);
    } else {
      auto players = make_players(plan.assignment, k);
      stats = execute_round(plan.assignment, coordinator, players, source);
      for (std::uint32_t i = 0; i < k; ++i) cumulative_counts[i] += players[i].counter;
    }

    if (stats.items_captured == 0 || stats.items_captured > remaining) {
      throw std::logic_error("round captured " + std::to_string(stats.items_captured) +
                             " items against a threshold of " + std::to_string(remaining));
    }

    const std::uint64_t before = remaining;
    remaining -= stats.items_captured;
    stats.remaining_after = remaining;

    if (desc.learns && remaining > 0) {
      if (!learned || cfg.estimate_mode == EstimateMode::Cumulative) {
        learned = strategies::estimate_distribution(cumulative_counts, cfg.delta);
      }
    }
    if (plan.data_dependent && !backup_to_cmy &&
        strategies::backup_check(before, remaining, cfg.backup_threshold)) {
      backup_to_cmy = true;
    }

    report.rounds.push_back(stats);
    report.untracked_series.push_back(
        {coordinator.tally.total(), 100.0 * static_cast<double>(remaining) /
                                        static_cast<double>(initial)});
  }

  report.alarm_index = initial;
  report.total_messages = coordinator.tally.total();
  return report;
}

}  // namespace dtrack
