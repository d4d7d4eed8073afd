#include "dtrack.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "harness.hpp"
#include "selfcheck.hpp"

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dt_status fail(dt_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
dt_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DT_OK;
  } catch (const dtrack::ParseError& e) {
    return fail(DT_ERROR_PARSE, e.what());
  } catch (const dtrack::StreamExhausted& e) {
    return fail(DT_ERROR_STREAM_EXHAUSTED, e.what());
  } catch (const dtrack::InvalidPlayerId& e) {
    return fail(DT_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(DT_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(DT_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(DT_ERROR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(DT_ERROR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(DT_ERROR_INTERNAL, e.what());
  }
}

dt_status require(bool ok, const char* what) {
  return ok ? DT_OK : fail(DT_ERROR_INVALID_ARGUMENT, what);
}

std::string single_run_tag(const dtrack::RunReport& report) {
  const std::string id = dtrack::run_id(report);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

struct dt_config {
  dtrack::RunSpec spec;
};

struct dt_report {
  dtrack::RunReport report;
};

struct dt_grid {
  dtrack::ExperimentGrid grid;
};

extern "C" {

const char* dt_status_name(dt_status status) {
  switch (status) {
    case DT_OK: return "ok";
    case DT_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case DT_ERROR_PARSE: return "parse error";
    case DT_ERROR_STREAM_EXHAUSTED: return "stream exhausted";
    case DT_ERROR_IO: return "io error";
    case DT_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* dt_last_error(void) { return g_last_error.c_str(); }

void dt_string_free(char* text) { std::free(text); }

dt_config* dt_config_new(void) {
  auto* c = new (std::nothrow) dt_config;
  if (c != nullptr) c->spec.workload = dtrack::WorkloadSpec::synthetic(dtrack::Distribution::Uniform);
  return c;
}

void dt_config_free(dt_config* config) { delete config; }

dt_status dt_config_set_algorithm(dt_config* config, const char* name) {
  if (auto s = require(config && name, "null argument"); s != DT_OK) return s;
  return guarded([&] { config->spec.config.strategy = dtrack::parse_strategy(name); });
}

dt_status dt_config_set_threshold(dt_config* config, uint64_t n) {
  if (auto s = require(config != nullptr, "null config"); s != DT_OK) return s;
  config->spec.config.n_threshold = n;
  return DT_OK;
}

dt_status dt_config_set_players(dt_config* config, uint32_t k) {
  if (auto s = require(config != nullptr, "null config"); s != DT_OK) return s;
  config->spec.config.player_count = k;
  return DT_OK;
}

dt_status dt_config_set_delta(dt_config* config, double delta) {
  if (auto s = require(config != nullptr, "null config"); s != DT_OK) return s;
  if (auto s = require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)"); s != DT_OK) {
    return s;
  }
  config->spec.config.delta = delta;
  return DT_OK;
}

dt_status dt_config_set_seed(dt_config* config, uint64_t seed) {
  if (auto s = require(config != nullptr, "null config"); s != DT_OK) return s;
  config->spec.config.seed = seed;
  return DT_OK;
}

dt_status dt_config_set_backup_threshold(dt_config* config, double ratio) {
  if (auto s = require(config != nullptr, "null config"); s != DT_OK) return s;
  if (auto s = require(ratio > 0.0 && ratio <= 1.0, "backup threshold must lie in (0, 1]");
      s != DT_OK) {
    return s;
  }
  config->spec.config.backup_threshold = ratio;
  return DT_OK;
}

dt_status dt_config_set_estimate_mode(dt_config* config, const char* mode) {
  if (auto s = require(config && mode, "null argument"); s != DT_OK) return s;
  return guarded([&] { config->spec.config.estimate_mode = dtrack::parse_estimate_mode(mode); });
}

dt_status dt_config_set_distribution(dt_config* config, const char* name) {
  if (auto s = require(config && name, "null argument"); s != DT_OK) return s;
  return guarded([&] {
    config->spec.workload = dtrack::WorkloadSpec::synthetic(dtrack::parse_distribution(name));
  });
}

dt_status dt_config_set_trace(dt_config* config, const char* path) {
  if (auto s = require(config && path, "null argument"); s != DT_OK) return s;
  config->spec.workload = dtrack::WorkloadSpec::trace(path);
  return DT_OK;
}

dt_status dt_config_set_mu(dt_config* config, const double* mu, uint32_t count) {
  if (auto s = require(config && (mu || count == 0), "null argument"); s != DT_OK) return s;
  config->spec.config.mu.assign(mu, mu + count);
  return DT_OK;
}

dt_status dt_run(const dt_config* config, dt_report** out_report) {
  if (auto s = require(config && out_report, "null argument"); s != DT_OK) return s;
  *out_report = nullptr;
  return guarded([&] {
    auto report = dtrack::execute_run(config->spec);
    *out_report = new dt_report{std::move(report)};
  });
}

void dt_report_free(dt_report* report) { delete report; }

uint64_t dt_report_alarm_index(const dt_report* report) {
  return report != nullptr ? report->report.alarm_index : 0;
}

uint64_t dt_report_total_messages(const dt_report* report) {
  return report != nullptr ? report->report.total_messages : 0;
}

uint32_t dt_report_round_count(const dt_report* report) {
  return report != nullptr ? static_cast<uint32_t>(report->report.rounds.size()) : 0;
}

dt_status dt_report_round(const dt_report* report, uint32_t index, dt_round_view* out_view) {
  if (auto s = require(report && out_view, "null argument"); s != DT_OK) return s;
  if (auto s = require(index < report->report.rounds.size(), "round index out of range");
      s != DT_OK) {
    return s;
  }
  const auto& r = report->report.rounds[index];
  out_view->round = r.round_number;
  out_view->mode = dtrack::round_mode_name(r.mode).data();
  out_view->slack = r.slack;
  out_view->items_captured = r.items_captured;
  out_view->remaining_after = r.remaining_after;
  out_view->slack_grants = r.messages.slack_grants;
  out_view->notifications = r.messages.notifications;
  out_view->collect_requests = r.messages.collect_requests;
  out_view->counter_reports = r.messages.counter_reports;
  out_view->mode_switches = r.messages.mode_switches;
  out_view->item_reports = r.messages.item_reports;
  return DT_OK;
}

dt_status dt_report_to_json(const dt_report* report, char** out_json) {
  if (auto s = require(report && out_json, "null argument"); s != DT_OK) return s;
  return guarded([&] { *out_json = copy_string(dtrack::report_to_json(report->report)); });
}

dt_status dt_report_emit(const dt_report* report, const char* format, const char* directory,
                         char** out_summary) {
  if (auto s = require(report && format && directory, "null argument"); s != DT_OK) return s;
  return guarded([&] {
    const auto fmt = dtrack::parse_output_format(format);
    const dtrack::RunReport reports[] = {report->report};
    const auto emitted =
        dtrack::emit_reports(reports, fmt, directory, single_run_tag(report->report));
    if (out_summary != nullptr) {
      nlohmann::json summary{{"totals", emitted.totals.string()},
                             {"series", emitted.series.string()}};
      *out_summary = copy_string(summary.dump(2));
    }
  });
}

dt_grid* dt_grid_new(void) { return new (std::nothrow) dt_grid; }

void dt_grid_free(dt_grid* grid) { delete grid; }

dt_status dt_grid_add_algorithm(dt_grid* grid, const char* name) {
  if (auto s = require(grid && name, "null argument"); s != DT_OK) return s;
  return guarded([&] { grid->grid.algorithms.push_back(dtrack::parse_strategy(name)); });
}

dt_status dt_grid_add_distribution(dt_grid* grid, const char* name) {
  if (auto s = require(grid && name, "null argument"); s != DT_OK) return s;
  return guarded([&] {
    grid->grid.workloads.push_back(
        dtrack::WorkloadSpec::synthetic(dtrack::parse_distribution(name)));
  });
}

dt_status dt_grid_add_trace(dt_grid* grid, const char* path) {
  if (auto s = require(grid && path, "null argument"); s != DT_OK) return s;
  grid->grid.workloads.push_back(dtrack::WorkloadSpec::trace(path));
  return DT_OK;
}

dt_status dt_grid_add_threshold(dt_grid* grid, uint64_t n) {
  if (auto s = require(grid != nullptr, "null grid"); s != DT_OK) return s;
  grid->grid.thresholds.push_back(n);
  return DT_OK;
}

dt_status dt_grid_add_players(dt_grid* grid, uint32_t k) {
  if (auto s = require(grid != nullptr, "null grid"); s != DT_OK) return s;
  grid->grid.player_counts.push_back(k);
  return DT_OK;
}

dt_status dt_grid_set_delta(dt_grid* grid, double delta) {
  if (auto s = require(grid != nullptr, "null grid"); s != DT_OK) return s;
  if (auto s = require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)"); s != DT_OK) {
    return s;
  }
  grid->grid.delta = delta;
  return DT_OK;
}

dt_status dt_grid_set_seed(dt_grid* grid, uint64_t seed) {
  if (auto s = require(grid != nullptr, "null grid"); s != DT_OK) return s;
  grid->grid.seed = seed;
  return DT_OK;
}

dt_status dt_grid_set_replicates(dt_grid* grid, uint32_t count) {
  if (auto s = require(grid != nullptr, "null grid"); s != DT_OK) return s;
  if (auto s = require(count >= 1, "replicate count must be >= 1"); s != DT_OK) return s;
  grid->grid.replicates = count;
  return DT_OK;
}

dt_status dt_grid_set_backup_threshold(dt_grid* grid, double ratio) {
  if (auto s = require(grid != nullptr, "null grid"); s != DT_OK) return s;
  if (auto s = require(ratio > 0.0 && ratio <= 1.0, "backup threshold must lie in (0, 1]");
      s != DT_OK) {
    return s;
  }
  grid->grid.backup_threshold = ratio;
  return DT_OK;
}

dt_status dt_grid_set_estimate_mode(dt_grid* grid, const char* mode) {
  if (auto s = require(grid && mode, "null argument"); s != DT_OK) return s;
  return guarded([&] { grid->grid.estimate_mode = dtrack::parse_estimate_mode(mode); });
}

dt_status dt_grid_run(const dt_grid* grid, const char* format, const char* directory,
                      char** out_summary) {
  if (auto s = require(grid && format && directory, "null argument"); s != DT_OK) return s;
  return guarded([&] {
    const auto fmt = dtrack::parse_output_format(format);
    const auto cells = dtrack::run_grid(grid->grid);

    std::vector<dtrack::RunReport> reports;
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& cell : cells) {
      if (cell.report) {
        reports.push_back(*cell.report);
      } else {
        errors.push_back(nlohmann::json{{"cell", cell.cell_index}, {"error", cell.error}});
      }
    }

    nlohmann::json summary{{"runs", reports.size()}, {"errors", errors}};
    if (!reports.empty()) {
      const auto emitted =
          dtrack::emit_reports(reports, fmt, directory, dtrack::grid_hash(grid->grid));
      summary["totals"] = emitted.totals.string();
      summary["series"] = emitted.series.string();
    }
    if (out_summary != nullptr) *out_summary = copy_string(summary.dump(2));
  });
}

dt_status dt_selfcheck(int* out_failures, char** out_text) {
  if (auto s = require(out_failures != nullptr, "null argument"); s != DT_OK) return s;
  return guarded([&] {
    const auto results = dtrack::run_selfcheck();
    int failures = 0;
    std::string text;
    for (const auto& r : results) {
      failures += r.passed ? 0 : 1;
      text += r.passed ? "[pass] " : "[FAIL] ";
      text += r.name;
      if (!r.passed) {
        text += " (";
        text += r.detail;
        text += ")";
      }
      text += "\n";
    }
    *out_failures = failures;
    if (out_text != nullptr) *out_text = copy_string(text);
  });
}

}  // extern "C"
