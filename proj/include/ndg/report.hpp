// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#ifndef NDG_REPORT_HPP
#define NDG_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ndg {

/// One benchmark result row. Every row carries the full parameter set used
/// to produce it, so any row can be rerun from the report alone. Absent
/// numeric fields are NaN (steps: -1) and serialize as empty CSV cells /
/// omitted JSON keys.
struct BenchRow {
  std::string experiment;
  std::string row_type = "run";  // run | slope | fit | dimcmp | warning
  std::string status = "ok";     // ok | failed | skipped | unreachable
  std::string equation;
  std::string rk;
  std::string device;
  std::string note;

  int dim = 0;
  int order = 0;
  int nx = 0, ny = 0, nz = 0;
  int nk = 0;
  int workers = 0;
  std::uint64_t seed = 0;
  double cfl = nan();
  double t_end = nan();
  long steps = -1;
  long long dof = 0;

  double dt_min = nan();
  double dt_max = nan();
  double wall_seconds = nan();
  double time_per_dof = nan();
  double l2_error = nan();
  double slope = nan();         // d ln(L2) / d ln(cells), least squares
  double target_error = nan();  // fit rows
  double fit_c = nan();         // dof * error^(1/order)
  double fit_c_ref = nan();
  double speedup = nan();
  double efficiency = nan();
  double power_watts = nan();
  double energy_joules = nan();
  double energy_per_dof = nan();

  static double nan();
};

struct ReportMeta {
  std::string version;
  std::string config_digest;  // hex FNV-1a of the canonical experiment spec
  std::string timestamp;      // ISO 8601 UTC, set at report creation
};

struct BenchReport {
  ReportMeta meta;
  std::vector<BenchRow> rows;

  bool any_failed() const;
};

/// The fixed CSV column order (also the set of JSON keys).
const std::vector<std::string>& report_columns();

/// Write the report; format is "csv" or "json". Throws ConfigError for an
/// empty report (no file is created) and std::runtime_error for unwritable
/// paths. Output bytes are a pure function of the report.
void emit_report(const BenchReport& report, const std::string& format,
                 const std::string& path);

std::string report_to_csv(const BenchReport& report);
std::string report_to_json(const BenchReport& report);

/// Read back a CSV report written by emit_report.
BenchReport read_report_csv(const std::string& path);

/// 64-bit FNV-1a of a string, as fixed-width hex.
std::string hex_digest64(const std::string& text);

/// Current UTC time, ISO 8601.
std::string iso_timestamp_utc();

}  // namespace ndg

#endif
