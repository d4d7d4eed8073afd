/*
 * dtrack: distributed threshold tracking simulator.
 *
 * C interface to the simulation core. Handles are opaque; every function
 * that can fail returns a dt_status, and dt_last_error() describes the most
 * recent failure on the calling thread. Strings returned through char**
 * are heap-allocated and must be released with dt_string_free().
 */

#ifndef DTRACK_H
#define DTRACK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dt_status {
  DT_OK = 0,
  DT_ERROR_INVALID_ARGUMENT = 1,
  DT_ERROR_PARSE = 2,
  DT_ERROR_STREAM_EXHAUSTED = 3,
  DT_ERROR_IO = 4,
  DT_ERROR_INTERNAL = 5,
} dt_status;

const char* dt_status_name(dt_status status);

/* Message for the last failure on this thread; empty string if none. */
const char* dt_last_error(void);

void dt_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Single-run configuration                                            */
/* ------------------------------------------------------------------ */

typedef struct dt_config dt_config;

dt_config* dt_config_new(void);
void dt_config_free(dt_config* config);

/* Algorithm names: straightforward, unislk, cmy, stcslk-kwndst,
 * dynslk-kwndst, stcslk-lrndst, dynslk-lrndst. */
dt_status dt_config_set_algorithm(dt_config* config, const char* name);
dt_status dt_config_set_threshold(dt_config* config, uint64_t n);
/* For traces, 0 means "infer from the trace contents". */
dt_status dt_config_set_players(dt_config* config, uint32_t k);
dt_status dt_config_set_delta(dt_config* config, double delta);
dt_status dt_config_set_seed(dt_config* config, uint64_t seed);
dt_status dt_config_set_backup_threshold(dt_config* config, double ratio);
/* "cumulative" (default) or "first-round". */
dt_status dt_config_set_estimate_mode(dt_config* config, const char* mode);
/* Distribution names: uniform, gaussian, zipfian, exponential. */
dt_status dt_config_set_distribution(dt_config* config, const char* name);
dt_status dt_config_set_trace(dt_config* config, const char* path);
/* Explicit arrival probabilities for the known-distribution strategies.
 * Optional: when omitted they default to the exact sampler probabilities
 * (synthetic) or the whole-trace frequencies (traces). */
dt_status dt_config_set_mu(dt_config* config, const double* mu, uint32_t count);

/* ------------------------------------------------------------------ */
/* Runs and reports                                                    */
/* ------------------------------------------------------------------ */

typedef struct dt_report dt_report;

dt_status dt_run(const dt_config* config, dt_report** out_report);
void dt_report_free(dt_report* report);

uint64_t dt_report_alarm_index(const dt_report* report);
uint64_t dt_report_total_messages(const dt_report* report);
uint32_t dt_report_round_count(const dt_report* report);

typedef struct dt_round_view {
  uint32_t round;           /* 1-based round number */
  const char* mode;         /* mechanism used this round */
  uint64_t slack;           /* shared slack, 0 for per-player threshold rounds */
  uint64_t items_captured;
  uint64_t remaining_after;
  uint64_t slack_grants;
  uint64_t notifications;
  uint64_t collect_requests;
  uint64_t counter_reports;
  uint64_t mode_switches;
  uint64_t item_reports;
} dt_round_view;

dt_status dt_report_round(const dt_report* report, uint32_t index, dt_round_view* out_view);

dt_status dt_report_to_json(const dt_report* report, char** out_json);

/* Writes totals_<tag> and series_<tag> (format "csv" or "json") into the
 * directory; the tag is a hash of the run configuration. out_summary, if
 * non-NULL, receives a JSON object naming the written files. */
dt_status dt_report_emit(const dt_report* report, const char* format, const char* directory,
                         char** out_summary);

/* ------------------------------------------------------------------ */
/* Experiment grids                                                    */
/* ------------------------------------------------------------------ */

typedef struct dt_grid dt_grid;

dt_grid* dt_grid_new(void);
void dt_grid_free(dt_grid* grid);

dt_status dt_grid_add_algorithm(dt_grid* grid, const char* name);
dt_status dt_grid_add_distribution(dt_grid* grid, const char* name);
dt_status dt_grid_add_trace(dt_grid* grid, const char* path);
dt_status dt_grid_add_threshold(dt_grid* grid, uint64_t n);
dt_status dt_grid_add_players(dt_grid* grid, uint32_t k);
dt_status dt_grid_set_delta(dt_grid* grid, double delta);
dt_status dt_grid_set_seed(dt_grid* grid, uint64_t seed);
dt_status dt_grid_set_replicates(dt_grid* grid, uint32_t count);
dt_status dt_grid_set_backup_threshold(dt_grid* grid, double ratio);
dt_status dt_grid_set_estimate_mode(dt_grid* grid, const char* mode);

/* Runs the whole grid and writes totals/series files into the directory.
 * Per-cell failures do not abort the sweep; they are listed in the summary
 * JSON ({"runs":…, "errors":[…], "totals":…, "series":…}). */
dt_status dt_grid_run(const dt_grid* grid, const char* format, const char* directory,
                      char** out_summary);

/* ------------------------------------------------------------------ */
/* Diagnostics                                                         */
/* ------------------------------------------------------------------ */

/* Evaluates the bound formulas against frozen high-precision references.
 * Returns DT_OK with *out_failures = 0 when everything passes; out_text,
 * if non-NULL, receives one line per check. */
dt_status dt_selfcheck(int* out_failures, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* DTRACK_H */
