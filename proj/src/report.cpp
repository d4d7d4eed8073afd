#include "report.hpp"

#include <json.hpp>

namespace dtrack {

using nlohmann::json;

namespace {

json tally_to_json(const MessageTally& t) {
  return json{{"slack_grants", t.slack_grants},
              {"notifications", t.notifications},
              {"collect_requests", t.collect_requests},
              {"counter_reports", t.counter_reports},
              {"mode_switches", t.mode_switches},
              {"item_reports", t.item_reports}};
}

MessageTally tally_from_json(const json& j) {
  MessageTally t;
  t.slack_grants = j.at("slack_grants").get<std::uint64_t>();
  t.notifications = j.at("notifications").get<std::uint64_t>();
  t.collect_requests = j.at("collect_requests").get<std::uint64_t>();
  t.counter_reports = j.at("counter_reports").get<std::uint64_t>();
  t.mode_switches = j.at("mode_switches").get<std::uint64_t>();
  t.item_reports = j.at("item_reports").get<std::uint64_t>();
  return t;
}

json round_to_json(const RoundStats& r) {
  return json{{"round", r.round_number},
              {"mode", round_mode_name(r.mode)},
              {"slack", r.slack},
              {"items_captured", r.items_captured},
              {"remaining_after", r.remaining_after},
              {"messages", tally_to_json(r.messages)}};
}

RoundStats round_from_json(const json& j) {
  RoundStats r;
  r.round_number = j.at("round").get<std::uint32_t>();
  r.mode = parse_round_mode(j.at("mode").get<std::string>());
  r.slack = j.at("slack").get<std::uint64_t>();
  r.items_captured = j.at("items_captured").get<std::uint64_t>();
  r.remaining_after = j.at("remaining_after").get<std::uint64_t>();
  r.messages = tally_from_json(j.at("messages"));
  return r;
}

json config_to_json(const AlgorithmConfig& c) {
  json j{{"algorithm", strategy_name(c.strategy)},
         {"n", c.n_threshold},
         {"k", c.player_count},
         {"delta", c.delta},
         {"backup_threshold", c.backup_threshold},
         {"seed", c.seed},
         {"estimate_mode", estimate_mode_name(c.estimate_mode)}};
  if (!c.mu.empty()) j["mu"] = c.mu;
  return j;
}

AlgorithmConfig config_from_json(const json& j) {
  AlgorithmConfig c;
  c.strategy = parse_strategy(j.at("algorithm").get<std::string>());
  c.n_threshold = j.at("n").get<std::uint64_t>();
  c.player_count = j.at("k").get<std::uint32_t>();
  c.delta = j.at("delta").get<double>();
  c.backup_threshold = j.at("backup_threshold").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.estimate_mode = parse_estimate_mode(j.at("estimate_mode").get<std::string>());
  if (j.contains("mu")) c.mu = j.at("mu").get<std::vector<double>>();
  return c;
}

json report_to_json_value(const RunReport& r) {
  json rounds = json::array();
  for (const auto& round : r.rounds) rounds.push_back(round_to_json(round));
  json series = json::array();
  for (const auto& p : r.untracked_series) {
    series.push_back(json{{"cumulative_messages", p.cumulative_messages},
                          {"untracked_percent", p.untracked_percent}});
  }
  return json{{"config", config_to_json(r.config)},
              {"workload", r.workload},
              {"generator", r.generator},
              {"alarm_index", r.alarm_index},
              {"total_messages", r.total_messages},
              {"rounds", rounds},
              {"untracked_series", series}};
}

RunReport report_from_json_value(const json& j) {
  RunReport r;
  r.config = config_from_json(j.at("config"));
  r.workload = j.at("workload").get<std::string>();
  r.generator = j.at("generator").get<std::string>();
  r.alarm_index = j.at("alarm_index").get<std::uint64_t>();
  r.total_messages = j.at("total_messages").get<std::uint64_t>();
  for (const auto& round : j.at("rounds")) r.rounds.push_back(round_from_json(round));
  for (const auto& p : j.at("untracked_series")) {
    r.untracked_series.push_back(SeriesPoint{p.at("cumulative_messages").get<std::uint64_t>(),
                                             p.at("untracked_percent").get<double>()});
  }
  return r;
}

}  // namespace

std::string run_id(const RunReport& r) {
  return std::string(strategy_name(r.config.strategy)) + "-" + r.workload + "-n" +
         std::to_string(r.config.n_threshold) + "-k" + std::to_string(r.config.player_count) +
         "-s" + std::to_string(r.config.seed);
}

std::string report_to_json(const RunReport& report) {
  return report_to_json_value(report).dump(2);
}

RunReport report_from_json(const std::string& text) {
  return report_from_json_value(json::parse(text));
}

std::string reports_to_json(std::span<const RunReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json_value(r));
  return arr.dump(2);
}

std::vector<RunReport> reports_from_json(const std::string& text) {
  std::vector<RunReport> out;
  for (const auto& j : json::parse(text)) out.push_back(report_from_json_value(j));
  return out;
}

void write_totals_csv(std::ostream& out, std::span<const RunReport> reports) {
  out << "algorithm,distribution,n,k,seed,total_messages,rounds\n";
  for (const auto& r : reports) {
    out << strategy_name(r.config.strategy) << ',' << r.workload << ',' << r.config.n_threshold
        << ',' << r.config.player_count << ',' << r.config.seed << ',' << r.total_messages << ','
        << r.rounds.size() << '\n';
  }
}

void write_series_csv(std::ostream& out, std::span<const RunReport> reports) {
  out << "run_id,round,cumulative_messages,untracked_percent\n";
  for (const auto& r : reports) {
    const std::string id = run_id(r);
    for (std::size_t i = 0; i < r.untracked_series.size(); ++i) {
      const auto& p = r.untracked_series[i];
      out << id << ',' << i << ',' << p.cumulative_messages << ','
          << json(p.untracked_percent).dump() << '\n';
    }
  }
}

std::string series_to_json(std::span<const RunReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    const std::string id = run_id(r);
    for (std::size_t i = 0; i < r.untracked_series.size(); ++i) {
      const auto& p = r.untracked_series[i];
      arr.push_back(json{{"run_id", id},
                         {"round", i},
                         {"cumulative_messages", p.cumulative_messages},
                         {"untracked_percent", p.untracked_percent}});
    }
  }
  return arr.dump(2);
}

}  // namespace dtrack
