#ifndef DTRACK_REPORT_HPP
#define DTRACK_REPORT_HPP

#include <ostream>
#include <span>
#include <string>

#include "protocol.hpp"

namespace dtrack {

// Stable identifier for one run inside an emitted table.
std::string run_id(const RunReport& report);

std::string report_to_json(const RunReport& report);
RunReport report_from_json(const std::string& text);

std::string reports_to_json(std::span<const RunReport> reports);
std::vector<RunReport> reports_from_json(const std::string& text);

// Totals table: algorithm,distribution,n,k,seed,total_messages,rounds
void write_totals_csv(std::ostream& out, std::span<const RunReport> reports);

// Per-round series: run_id,round,cumulative_messages,untracked_percent.
// Round 0 is the origin point (no messages spent, 100% untracked).
void write_series_csv(std::ostream& out, std::span<const RunReport> reports);

// Series rows in JSON form, same schema as the CSV.
std::string series_to_json(std::span<const RunReport> reports);

}  // namespace dtrack

#endif
