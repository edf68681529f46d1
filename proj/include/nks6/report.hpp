#pragma once

// Check records and their JSON / CSV / text renderings.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#ifndef NKS6_VERSION
#define NKS6_VERSION "1.0.0"
#endif

namespace nks6 {

struct Check {
  std::string name;
  double residual = 0.0;   // worst residual over the sweep
  double tolerance = 0.0;
  std::vector<double> worst_point;  // chart coordinates; empty for pointless checks

  bool pass() const { return std::isfinite(residual) && residual <= tolerance; }
};

struct Report {
  std::string suite;
  std::string version = NKS6_VERSION;
  std::uint64_t seed = 0;
  std::string catalog;
  std::vector<int> grid;
  std::string timestamp;  // the only field allowed to differ between identical runs
  std::vector<Check> checks;
  std::vector<std::string> notes;  // conditional outcomes and observations

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }

  // Adds a check or raises an existing one to the worse residual.
  void record(const std::string& name, double residual, double tolerance, const std::vector<double>& point = {}) {
    for (auto& c : checks)
      if (c.name == name) {
        if (!(residual <= c.residual)) {
          c.residual = residual;
          c.worst_point = point;
        }
        return;
      }
    checks.push_back({name, residual, tolerance, point});
  }
};

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Non-finite residuals have no JSON number; they are written as null.
inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["version"] = r.version;
  j["seed"] = r.seed;
  j["catalog"] = r.catalog;
  j["grid"] = r.grid;
  j["timestamp"] = r.timestamp;
  j["pass"] = r.pass();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    if (std::isfinite(c.residual))
      cj["residual"] = c.residual;
    else
      cj["residual"] = nullptr;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass();
    cj["worst_point"] = c.worst_point;
    j["checks"].push_back(cj);
  }
  j["notes"] = r.notes;
  return j;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

inline std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << "name,residual,tolerance,pass,worst_point\n";
  for (const auto& c : r.checks) {
    os << c.name << ',' << format_double(c.residual) << ',' << format_double(c.tolerance) << ','
       << (c.pass() ? "true" : "false") << ",\"";
    for (std::size_t i = 0; i < c.worst_point.size(); ++i) os << (i ? " " : "") << format_double(c.worst_point[i]);
    os << "\"\n";
  }
  return os.str();
}

inline std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "suite " << r.suite << "  catalog " << (r.catalog.empty() ? "-" : r.catalog) << "  seed " << r.seed
     << "  version " << r.version << '\n';
  std::size_t width = 5;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.checks) {
    os << (c.pass() ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
       << std::scientific << std::setprecision(3) << c.residual << " <= " << c.tolerance;
    if (!c.worst_point.empty()) {
      os << "  at (";
      for (std::size_t i = 0; i < c.worst_point.size(); ++i)
        os << (i ? ", " : "") << std::fixed << std::setprecision(4) << c.worst_point[i];
      os << ')';
    }
    os << std::defaultfloat << '\n';
  }
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  os << (r.pass() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

enum class ReportFormat { kJson, kCsv, kText };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "text") return ReportFormat::kText;
  throw std::invalid_argument("unknown report format '" + s + "' (json, csv, text)");
}

inline std::string render(const Report& r, ReportFormat f) {
  switch (f) {
    case ReportFormat::kJson: return to_json(r).dump(2) + "\n";
    case ReportFormat::kCsv: return to_csv(r);
    case ReportFormat::kText: return to_text(r);
  }
  return {};
}

// Writes <dir>/<suite>[-<catalog>].<ext> and returns the path.
inline std::filesystem::path emit_report(const Report& r, ReportFormat f, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const char* ext = f == ReportFormat::kJson ? ".json" : f == ReportFormat::kCsv ? ".csv" : ".txt";
  const std::string stem = r.suite + (r.catalog.empty() ? "" : "-" + r.catalog);
  const auto path = dir / (stem + ext);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write report to " + path.string());
  out << render(r, f);
  if (!out) throw std::runtime_error("write failed for " + path.string());
  return path;
}

}  // namespace nks6
