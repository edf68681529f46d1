// nks6: run a verification suite and write its report.
//
//   nks6 --suite theorem1 --catalog lagrangian-torus --grid 5x6x6 --format text
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on a usage
// or evaluation error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nks6/suites.hpp"

namespace {

std::pair<std::string, double> parse_tolerance(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad --tol '" + s + "' (expected name=value)");
  std::size_t used = 0;
  const std::string value = s.substr(eq + 1);
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (value.empty() || used != value.size()) throw std::invalid_argument("bad tolerance value in '" + s + "'");
  return {s.substr(0, eq), v};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Lagrangian submanifolds of the nearly Kaehler 6-sphere"};
  std::string suite, catalog, grid, out, format = "json";
  std::uint64_t seed = 1;
  std::vector<std::string> tols;
  bool list = false;
  app.add_option("--suite", suite, "algebra | nearly-kahler | structure-equations | tsinghua | warped-oracle | theorem1");
  app.add_option("--catalog", catalog, "catalog id (see --list)");
  app.add_option("--grid", grid, "grid resolution NxN or NxNxN (default 5 per axis)");
  app.add_option("--seed", seed, "seed for every random draw");
  app.add_option("--tol", tols, "tolerance override name=value (repeatable)");
  app.add_option("--out", out, "output directory (default $NKS6_OUT_DIR, else stdout only)");
  app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--list", list, "list suites and catalog entries");
  CLI11_PARSE(app, argc, argv);

  try {
    if (list) {
      std::cout << "suites:\n";
      for (const auto& s : nks6::suite_names()) std::cout << "  " << s << '\n';
      std::cout << "catalog:\n";
      for (const auto& e : nks6::catalog()) std::cout << "  " << e.id << "  " << e.description << '\n';
      return 0;
    }
    if (suite.empty()) throw std::invalid_argument("--suite is required");

    nks6::RunConfig cfg;
    cfg.catalog = catalog;
    cfg.seed = seed;
    if (!grid.empty()) cfg.grid = nks6::parse_grid(grid);
    for (const auto& t : tols) cfg.tolerances.insert(parse_tolerance(t));

    const nks6::Report report = nks6::run_suite(cfg, suite);
    const auto fmt = nks6::parse_format(format);
    if (out.empty())
      if (const char* env = std::getenv("NKS6_OUT_DIR")) out = env;
    if (out.empty()) {
      std::cout << nks6::render(report, fmt);
    } else {
      const auto path = nks6::emit_report(report, fmt, out);
      std::cerr << (report.pass() ? "PASS " : "FAIL ") << path.string() << '\n';
    }
    return report.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "nks6: " << e.what() << '\n';
    return 2;
  }
}
