#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "nks6/suites.hpp"

using namespace nks6;
using nlohmann::json;

namespace {

std::size_t csv_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n - 1;  // header
}

RunConfig config(const std::string& catalog, std::vector<int> grid = {}) {
  RunConfig c;
  c.catalog = catalog;
  c.grid = std::move(grid);
  return c;
}

}  // namespace

TEST_CASE("JSON report schema") {
  const Report r = run_suite(config(""), "algebra");
  const json j = json::parse(render(r, ReportFormat::kJson));
  for (const char* key : {"suite", "version", "seed", "catalog", "grid", "timestamp", "pass", "checks", "notes"})
    CHECK(j.contains(key));
  CHECK(j["suite"] == "algebra");
  CHECK(j["pass"] == true);
  REQUIRE(j["checks"].is_array());
  REQUIRE_FALSE(j["checks"].empty());
  for (const auto& c : j["checks"]) {
    CHECK(c["name"].is_string());
    CHECK(c["residual"].is_number());
    CHECK(c["tolerance"].is_number());
    CHECK(c["pass"].is_boolean());
    CHECK(c["worst_point"].is_array());
  }
  CHECK(csv_rows(render(r, ReportFormat::kCsv)) == j["checks"].size());
}

TEST_CASE("empty and failing reports") {
  Report r;
  r.suite = "empty";
  CHECK(r.pass());
  const json j = json::parse(render(r, ReportFormat::kJson));
  CHECK(j["checks"].empty());
  CHECK(j["pass"] == true);
  CHECK(csv_rows(to_csv(r)) == 0);

  r.record("x", 1.0, 0.5, {0.1, 0.2});
  r.record("x", 0.2, 0.5, {0.3, 0.4});  // better residuals do not replace the worst
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].residual == 1.0);
  CHECK(r.checks[0].worst_point == std::vector<double>{0.1, 0.2});
  CHECK_FALSE(r.pass());

  r.record("nan", std::numeric_limits<double>::quiet_NaN(), 1.0);
  CHECK_FALSE(r.checks[1].pass());
  CHECK(json::parse(render(r, ReportFormat::kJson))["checks"][1]["residual"].is_null());
  CHECK(to_text(r).find("FAIL") != std::string::npos);
}

TEST_CASE("identical runs differ only in the timestamp") {
  auto strip = [](Report r) {
    r.timestamp.clear();
    return render(r, ReportFormat::kJson);
  };
  const auto cfg = config("lagrangian-torus", {3, 4, 4});
  CHECK(strip(run_suite(cfg, "theorem1")) == strip(run_suite(cfg, "theorem1")));
  CHECK(strip(run_suite(config(""), "nearly-kahler")) == strip(run_suite(config(""), "nearly-kahler")));
}

TEST_CASE("theorem1 reports the delta equality gap") {
  const Report r = run_suite(config("lagrangian-torus", {3, 4, 4}), "theorem1");
  CHECK(r.pass());
  CHECK(std::any_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.name == "delta_equality_gap"; }));
  CHECK(std::any_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.name == "frame_form_case1"; }));
}

TEST_CASE("every suite runs and passes on its default input") {
  for (const auto& s : suite_names()) {
    const Report r = run_suite(config("", {3, 3, 3}), s);
    INFO(s);
    CHECK(r.pass());
    CHECK(r.suite == s);
  }
}

TEST_CASE("conditional suites record notes instead of failures") {
  const Report r = run_suite(config("flat-torus", {3, 3, 3}), "tsinghua");
  CHECK(r.pass());
  CHECK_FALSE(r.notes.empty());
  const Report t = run_suite(config("perturbed", {3, 3, 3}), "theorem1");
  CHECK(t.pass());
  CHECK_FALSE(t.notes.empty());
}

TEST_CASE("tolerance overrides apply by name") {
  auto cfg = config("tg-s3", {3, 3, 3});
  cfg.tolerances["h_normality"] = 1e-300;
  const Report r = run_suite(cfg, "structure-equations");
  for (const auto& c : r.checks)
    if (c.name == "h_normality") CHECK(c.tolerance == 1e-300);
}

TEST_CASE("bad configuration is rejected") {
  CHECK_THROWS_AS(run_suite(config(""), "no-such-suite"), std::invalid_argument);
  CHECK_THROWS_AS(run_suite(config("no-such-entry"), "theorem1"), std::invalid_argument);
  CHECK_THROWS_AS(run_suite(config("tg-s3"), "theorem1"), std::invalid_argument);
  CHECK_THROWS_AS(run_suite(config("", {1, 3}), "algebra"), std::invalid_argument);
  auto bad = config("");
  bad.tolerances["x"] = -1.0;
  CHECK_THROWS_AS(run_suite(bad, "algebra"), std::invalid_argument);
  CHECK(parse_grid("3x4x5") == std::vector<int>{3, 4, 5});
  CHECK(parse_grid("7x7") == std::vector<int>{7, 7});
  for (const char* s : {"3", "3x", "x3", "3x4x5x6", "ax3", "3.5x2"}) CHECK_THROWS_AS(parse_grid(s), std::invalid_argument);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("reports are written under the suite and catalog name") {
  const auto dir = std::filesystem::temp_directory_path() / "nks6_report_test";
  std::filesystem::remove_all(dir);
  Report r;
  r.suite = "theorem1";
  r.catalog = "great-s2";
  const auto path = emit_report(r, ReportFormat::kCsv, dir);
  CHECK(path.filename() == "theorem1-great-s2.csv");
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "name,residual,tolerance,pass,worst_point");
  std::filesystem::remove_all(dir);
}
