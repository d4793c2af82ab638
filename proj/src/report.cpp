// Copyright (c) 2026 The ndgbench authors
// SPDX-License-Identifier: Apache-2.0

#include "ndg/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ndg/errors.hpp"

namespace ndg {

double BenchRow::nan() { return std::numeric_limits<double>::quiet_NaN(); }

bool BenchReport::any_failed() const {
  for (const auto& r : rows) {
    if (r.status == "failed") return true;
  }
  return false;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Column registry: one entry per CSV column / JSON key, with string
// accessors in both directions so the writer and reader cannot drift apart.
// The kind drives typed JSON output.
enum class ColKind { text, integer, unsigned_integer, real };

struct Column {
  std::string name;
  ColKind kind;
  std::function<std::string(const BenchRow&)> get;
  std::function<void(BenchRow&, const std::string&)> set;
};

Column str_col(const std::string& name, std::string BenchRow::* field) {
  return {name, ColKind::text, [field](const BenchRow& r) { return r.*field; },
          [field](BenchRow& r, const std::string& s) { r.*field = s; }};
}

Column int_col(const std::string& name, int BenchRow::* field) {
  return {name, ColKind::integer,
          [field](const BenchRow& r) { return std::to_string(r.*field); },
          [field](BenchRow& r, const std::string& s) { r.*field = std::stoi(s); }};
}

Column dbl_col(const std::string& name, double BenchRow::* field) {
  return {name, ColKind::real,
          [field](const BenchRow& r) {
            return std::isnan(r.*field) ? std::string() : fmt_double(r.*field);
          },
          [field](BenchRow& r, const std::string& s) {
            r.*field = s.empty() ? BenchRow::nan() : std::stod(s);
          }};
}

const std::vector<Column>& columns() {
  static const std::vector<Column> cols = [] {
    std::vector<Column> c;
    c.push_back(str_col("experiment", &BenchRow::experiment));
    c.push_back(str_col("row_type", &BenchRow::row_type));
    c.push_back(str_col("status", &BenchRow::status));
    c.push_back(str_col("equation", &BenchRow::equation));
    c.push_back(int_col("dim", &BenchRow::dim));
    c.push_back(int_col("order", &BenchRow::order));
    c.push_back(str_col("rk", &BenchRow::rk));
    c.push_back(int_col("nx", &BenchRow::nx));
    c.push_back(int_col("ny", &BenchRow::ny));
    c.push_back(int_col("nz", &BenchRow::nz));
    c.push_back(int_col("nk", &BenchRow::nk));
    c.push_back(Column{"seed", ColKind::unsigned_integer,
                       [](const BenchRow& r) { return std::to_string(r.seed); },
                       [](BenchRow& r, const std::string& s) { r.seed = std::stoull(s); }});
    c.push_back(dbl_col("cfl", &BenchRow::cfl));
    c.push_back(dbl_col("t_end", &BenchRow::t_end));
    c.push_back(int_col("workers", &BenchRow::workers));
    c.push_back(Column{"steps", ColKind::integer,
                       [](const BenchRow& r) {
                         return r.steps < 0 ? std::string() : std::to_string(r.steps);
                       },
                       [](BenchRow& r, const std::string& s) {
                         r.steps = s.empty() ? -1 : std::stol(s);
                       }});
    c.push_back(Column{"dof", ColKind::integer,
                       [](const BenchRow& r) { return std::to_string(r.dof); },
                       [](BenchRow& r, const std::string& s) { r.dof = std::stoll(s); }});
    c.push_back(dbl_col("dt_min", &BenchRow::dt_min));
    c.push_back(dbl_col("dt_max", &BenchRow::dt_max));
    c.push_back(dbl_col("wall_seconds", &BenchRow::wall_seconds));
    c.push_back(dbl_col("time_per_dof", &BenchRow::time_per_dof));
    c.push_back(dbl_col("l2_error", &BenchRow::l2_error));
    c.push_back(dbl_col("slope", &BenchRow::slope));
    c.push_back(dbl_col("target_error", &BenchRow::target_error));
    c.push_back(dbl_col("fit_c", &BenchRow::fit_c));
    c.push_back(dbl_col("fit_c_ref", &BenchRow::fit_c_ref));
    c.push_back(dbl_col("speedup", &BenchRow::speedup));
    c.push_back(dbl_col("efficiency", &BenchRow::efficiency));
    c.push_back(str_col("device", &BenchRow::device));
    c.push_back(dbl_col("power_watts", &BenchRow::power_watts));
    c.push_back(dbl_col("energy_joules", &BenchRow::energy_joules));
    c.push_back(dbl_col("energy_per_dof", &BenchRow::energy_per_dof));
    c.push_back(str_col("note", &BenchRow::note));
    return c;
  }();
  return cols;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : columns()) n.push_back(c.name);
    return n;
  }();
  return names;
}

std::string report_to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "# ndg-bench report\n";
  out << "# version=" << report.meta.version << " config=" << report.meta.config_digest
      << " timestamp=" << report.meta.timestamp << "\n";
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i].name;
  }
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      out << (i ? "," : "") << csv_escape(cols[i].get(row));
    }
    out << "\n";
  }
  return out.str();
}

std::string report_to_json(const BenchReport& report) {
  nlohmann::ordered_json j;
  j["meta"] = {{"version", report.meta.version},
               {"config", report.meta.config_digest},
               {"timestamp", report.meta.timestamp}};
  j["rows"] = nlohmann::ordered_json::array();
  const auto& cols = columns();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj;
    for (const auto& c : cols) {
      const std::string v = c.get(row);
      if (v.empty()) continue;  // absent numeric or empty string
      switch (c.kind) {
        case ColKind::text: obj[c.name] = v; break;
        case ColKind::integer: obj[c.name] = std::stoll(v); break;
        case ColKind::unsigned_integer: obj[c.name] = std::stoull(v); break;
        case ColKind::real: obj[c.name] = std::stod(v); break;
      }
    }
    j["rows"].push_back(std::move(obj));
  }
  return j.dump(2) + "\n";
}

void emit_report(const BenchReport& report, const std::string& format,
                 const std::string& path) {
  if (report.rows.empty()) {
    throw ConfigError("refusing to write an empty report");
  }
  std::string text;
  if (format == "csv") {
    text = report_to_csv(report);
  } else if (format == "json") {
    text = report_to_json(report);
  } else {
    throw ConfigError("unknown report format '" + format + "' (csv or json)");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("short write to " + path);
}

BenchReport read_report_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  BenchReport report;
  std::string line;
  bool header_seen = false;
  std::vector<int> mapping;  // csv position -> column index
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string tok;
      while (meta >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "version") report.meta.version = val;
        if (key == "config") report.meta.config_digest = val;
        if (key == "timestamp") report.meta.timestamp = val;
      }
      continue;
    }
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      const auto& cols = columns();
      for (const auto& f : fields) {
        int idx = -1;
        for (std::size_t c = 0; c < cols.size(); ++c) {
          if (cols[c].name == f) idx = static_cast<int>(c);
        }
        if (idx < 0) throw std::runtime_error(path + ": unknown column '" + f + "'");
        mapping.push_back(idx);
      }
      continue;
    }
    BenchRow row;
    for (std::size_t i = 0; i < fields.size() && i < mapping.size(); ++i) {
      columns()[mapping[i]].set(row, fields[i]);
    }
    report.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::runtime_error(path + ": no header line");
  return report;
}

std::string hex_digest64(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string iso_timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace ndg
