#pragma once

#include "entroloss/suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace entroloss {

using Json = nlohmann::ordered_json;

namespace report {

/// Shortest round-trip form capped at 17 significant digits; locale independent.
inline std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

// JSON has no inf/nan; those become strings.
inline Json json_number(double x) {
  if (std::isfinite(x)) return x;
  return number(x);
}

inline double from_json_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline Json to_json(const Check& c) {
  Json j;
  j["name"] = c.name;
  j["family"] = c.family;
  j["lhs"] = json_number(c.lhs);
  j["relation"] = to_string(c.relation);
  j["rhs"] = json_number(c.rhs);
  j["tolerance"] = json_number(c.tolerance);
  j["slack"] = json_number(c.slack());
  j["passed"] = c.passed();
  j["basis"] = c.basis;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline Json to_json(const SeriesTable& t) {
  Json j;
  j["family"] = t.family;
  j["n"] = t.grid;
  Json series = Json::object();
  for (size_t k = 0; k < t.names.size(); ++k) {
    Json s;
    s["limit"] = json_number(t.limit_values[k]);
    Json v = Json::array();
    for (const double x : t.columns[k]) v.push_back(json_number(x));
    s["values"] = std::move(v);
    series[t.names[k]] = std::move(s);
  }
  j["series"] = std::move(series);
  return j;
}

inline Json to_json(const SuiteReport& r) {
  Json j;
  j["id"] = r.id;
  j["claim"] = r.claim;
  j["passed"] = r.passed();
  j["min_slack"] = json_number(r.min_slack());
  j["max_slack"] = json_number(r.max_slack());
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  Json tables = Json::array();
  for (const auto& t : r.tables) tables.push_back(to_json(t));
  j["tables"] = std::move(tables);
  j["notes"] = r.notes;
  return j;
}

inline Json to_json(const BoundedValue& b) {
  Json j;
  j["value"] = json_number(b.value);
  j["provenance"] = b.exact ? "EXACT" : to_string(b.direction);
  j["converged"] = b.converged;
  j["gap_estimate"] = json_number(b.gap_estimate);
  j["budget_exhausted"] = b.exhausted;
  return j;
}

/// Long form: suite,family,n,series,value.
inline std::string series_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite,family,n,series,value\n";
  for (const auto& t : r.tables)
    for (size_t k = 0; k < t.names.size(); ++k) {
      for (size_t i = 0; i < t.grid.size(); ++i)
        os << csv_field(r.id) << ',' << csv_field(t.family) << ',' << t.grid[i] << ',' << csv_field(t.names[k]) << ','
           << number(t.columns[k][i]) << '\n';
      os << csv_field(r.id) << ',' << csv_field(t.family) << ",limit," << csv_field(t.names[k]) << ','
         << number(t.limit_values[k]) << '\n';
    }
  return os.str();
}

inline std::string checks_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite,family,check,lhs,relation,rhs,tolerance,slack,passed,basis\n";
  for (const auto& c : r.checks)
    os << csv_field(r.id) << ',' << csv_field(c.family) << ',' << csv_field(c.name) << ',' << number(c.lhs) << ','
       << to_string(c.relation) << ',' << number(c.rhs) << ',' << number(c.tolerance) << ',' << number(c.slack())
       << ',' << (c.passed() ? "true" : "false") << ',' << csv_field(c.basis) << '\n';
  return os.str();
}

/// Wide form for plotting: x = n, one column per series.
inline std::string plot_csv(const SeriesTable& t) {
  std::ostringstream os;
  os << "n";
  for (const auto& name : t.names) os << ',' << csv_field(name);
  os << '\n';
  for (size_t i = 0; i < t.grid.size(); ++i) {
    os << t.grid[i];
    for (const auto& col : t.columns) os << ',' << number(col[i]);
    os << '\n';
  }
  return os.str();
}

inline std::string file_stem(const std::string& s) {
  std::string out;
  for (const char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::ConfigError, "cannot write " + p.string());
  f << text;
}

enum class Format { json, csv, both };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "both") return Format::both;
  fail(ErrorKind::ConfigError, "format must be json, csv or both, got '" + s + "'");
}

/// Writes suite_<id>.json plus the CSV files; returns the paths written.
inline std::vector<std::filesystem::path> write_suite(const SuiteReport& r, const std::filesystem::path& dir,
                                                      Format fmt) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  const std::string stem = "suite_" + file_stem(r.id);
  if (fmt != Format::csv) {
    out.push_back(dir / (stem + ".json"));
    write_file(out.back(), to_json(r).dump(2) + "\n");
  }
  if (fmt != Format::json) {
    out.push_back(dir / (stem + ".csv"));
    write_file(out.back(), series_csv(r));
    out.push_back(dir / (stem + "_checks.csv"));
    write_file(out.back(), checks_csv(r));
    for (const auto& t : r.tables) {
      out.push_back(dir / ("plot_" + file_stem(r.id) + "_" + file_stem(t.family) + ".csv"));
      write_file(out.back(), plot_csv(t));
    }
  }
  return out;
}

struct SummaryRow {
  std::string id;
  std::string claim;
  bool passed = false;
  std::size_t checks = 0;
  double min_slack = 0.0;
  double max_slack = 0.0;
};

inline SummaryRow summarize(const SuiteReport& r) {
  return {r.id, r.claim, r.passed(), r.checks.size(), r.min_slack(), r.max_slack()};
}

inline SummaryRow summarize(const Json& j) {
  return {j.at("id").get<std::string>(), j.at("claim").get<std::string>(), j.at("passed").get<bool>(),
          j.at("checks").size(), from_json_number(j.at("min_slack")), from_json_number(j.at("max_slack"))};
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  os << "suite,claim,passed,checks,min_slack,max_slack\n";
  for (const auto& r : rows)
    os << csv_field(r.id) << ',' << csv_field(r.claim) << ',' << (r.passed ? "true" : "false") << ',' << r.checks
       << ',' << number(r.min_slack) << ',' << number(r.max_slack) << '\n';
  return os.str();
}

inline Json summary_json(const std::vector<SummaryRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["id"] = r.id;
    j["claim"] = r.claim;
    j["passed"] = r.passed;
    j["checks"] = r.checks;
    j["min_slack"] = json_number(r.min_slack);
    j["max_slack"] = json_number(r.max_slack);
    arr.push_back(std::move(j));
  }
  Json out;
  out["suites"] = std::move(arr);
  out["all_passed"] = std::all_of(rows.begin(), rows.end(), [](const SummaryRow& r) { return r.passed; });
  return out;
}

// Registry order first, unknown ids after in name order.
inline void order_rows(std::vector<SummaryRow>& rows) {
  const auto ids = suite_ids();
  const auto rank = [&](const std::string& id) {
    const auto it = std::find(ids.begin(), ids.end(), id);
    return static_cast<std::size_t>(it - ids.begin());
  };
  std::sort(rows.begin(), rows.end(), [&](const SummaryRow& a, const SummaryRow& b) {
    const auto ra = rank(a.id), rb = rank(b.id);
    return ra != rb ? ra < rb : a.id < b.id;
  });
}

/// Consolidates suite_*.json in `in` into summary.csv / summary.json in `out`.
inline std::vector<SummaryRow> consolidate(const std::filesystem::path& in, const std::filesystem::path& out,
                                           Format fmt = Format::both) {
  std::vector<SummaryRow> rows;
  if (std::filesystem::is_directory(in)) {
    for (const auto& e : std::filesystem::directory_iterator(in)) {
      const std::string name = e.path().filename().string();
      if (!e.is_regular_file() || name.rfind("suite_", 0) != 0 || e.path().extension() != ".json") continue;
      std::ifstream f(e.path());
      Json j;
      try {
        f >> j;
        rows.push_back(summarize(j));
      } catch (const Json::exception& ex) {
        fail(ErrorKind::ConfigError, e.path().string() + ": " + ex.what());
      }
    }
  }
  require(!rows.empty(), ErrorKind::MissingArtifacts, "no suite_*.json reports in " + in.string());
  order_rows(rows);
  std::filesystem::create_directories(out);
  if (fmt != Format::json) write_file(out / "summary.csv", summary_csv(rows));
  if (fmt != Format::csv) write_file(out / "summary.json", summary_json(rows).dump(2) + "\n");
  return rows;
}

}  // namespace report
}  // namespace entroloss
