#pragma once

// Verification suites driven by the command-line tool and the acceptance
// test.  Every random draw comes from RunConfig::seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nks6/cayley.hpp"
#include "nks6/constructions.hpp"
#include "nks6/invariants.hpp"
#include "nks6/nearly_kahler.hpp"
#include "nks6/report.hpp"
#include "nks6/submanifold.hpp"
#include "nks6/warped.hpp"

namespace nks6 {

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra",  "nearly-kahler", "structure-equations",
                                              "tsinghua", "warped-oracle", "theorem1"};
  return names;
}

struct RunConfig {
  std::string catalog;        // empty: the suite default
  std::vector<int> grid;      // per axis; empty: 5 on every axis
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;  // overrides by check name

  void validate() const {
    for (int n : grid)
      if (n < 2) throw std::invalid_argument("grid resolutions must be at least 2");
    for (const auto& [name, v] : tolerances)
      if (!(v > 0.0)) throw std::invalid_argument("tolerance for '" + name + "' must be positive");
  }

  double tol(const std::string& name, double fallback) const {
    const auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
  }

  // First `dim` grid entries; a short grid repeats its last entry.
  std::vector<int> resolution(int dim) const {
    std::vector<int> r;
    for (int i = 0; i < dim; ++i) r.push_back(grid.empty() ? 5 : grid[std::min<std::size_t>(at(i), grid.size() - 1)]);
    return r;
  }
};

// Parses "NxN" or "NxNxN".
inline std::vector<int> parse_grid(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty()) throw std::invalid_argument("bad grid '" + s + "' (expected NxN or NxNxN)");
    out.push_back(n);
  }
  if (out.size() < 2 || out.size() > 3) throw std::invalid_argument("bad grid '" + s + "' (expected NxN or NxNxN)");
  return out;
}

namespace detail {

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

// Worst value of a pointwise quantity over a grid, with its location.
struct Sweep {
  double value = 0.0;
  std::vector<double> point;
  void add(double v, const std::vector<double>& p) {
    if (point.empty() || !(v <= value)) {
      value = v;
      point = p;
    }
  }
};

inline Report start(const std::string& suite, const RunConfig& cfg, const std::string& catalog, int dim) {
  Report r;
  r.suite = suite;
  r.seed = cfg.seed;
  r.catalog = catalog;
  if (dim > 0) r.grid = cfg.resolution(dim);
  r.timestamp = utc_timestamp();
  return r;
}

inline double max_component(const Tensor4<double>& a, const Tensor4<double>& b, int d) {
  double m = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) m = std::max(m, std::abs(a[at(i)][at(j)][at(k)][at(l)] - b[at(i)][at(j)][at(k)][at(l)]));
  return m;
}

// Frame components of the unit-sphere curvature tensor.
inline Tensor4<double> unit_curvature(int d) {
  Tensor4<double> r{};
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) r[at(a)][at(b)][at(c)][at(e)] = double(b == c) * (a == e) - double(a == c) * (b == e);
  return r;
}

inline double max_h(const CurvaturePackage& pkg) {
  double m = 0.0;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) m = std::max(m, norm(pkg.h[at(i)][at(j)]));
  return m;
}

inline double max_h(const FrameView& f) {
  double m = 0.0;
  for (int a = 0; a < f.dim; ++a)
    for (int b = 0; b < f.dim; ++b) m = std::max(m, norm(f.h[at(a)][at(b)]));
  return m;
}

// Analyses every grid point; failures to evaluate become one failing record.
template <class Fn>
void for_each_point(Report& rep, const Immersion& imm, const std::vector<std::vector<double>>& pts, int order, Fn fn) {
  int failed = 0;
  std::vector<double> first;
  std::string why;
  for (const auto& u : pts) {
    try {
      fn(analyze(imm, u, order), u);
    } catch (const GeometryError& e) {
      if (failed++ == 0) {
        first = u;
        why = e.what();
      }
    }
  }
  if (failed > 0) {
    rep.record("chart_evaluation", failed, 0.0, first);
    rep.notes.push_back(std::to_string(failed) + " grid points could not be analysed: " + why);
  }
}

}  // namespace detail

inline Report suite_algebra(const RunConfig& cfg) {
  Report rep = detail::start("algebra", cfg, "", 0);
  const auto basis_only = verify_algebra(0, cfg.seed, 0.0);
  rep.record("table_identities_exact", basis_only.max_residual(), cfg.tol("table_identities_exact", 0.0));
  const auto r = verify_algebra(10000, cfg.seed, 1e-12);
  rep.record("antisymmetry", r.antisymmetry_residual, cfg.tol("antisymmetry", 1e-12));
  rep.record("orthogonality", r.orthogonality_residual, cfg.tol("orthogonality", 1e-12));
  rep.record("norm_identity", r.norm_residual, cfg.tol("norm_identity", 1e-12));
  // e1 x (e2 x e4) and (e1 x e2) x e4 differ: the product is not associative.
  const Vector7 lhs = cross(basis(1), cross(basis(2), basis(4))), rhs = cross(cross(basis(1), basis(2)), basis(4));
  rep.record("non_associativity_witness", max_abs(lhs - rhs) > 0.5 ? 0.0 : 1.0, cfg.tol("non_associativity_witness", 0.0));
  return rep;
}

inline Report suite_nearly_kahler(const RunConfig& cfg) {
  Report rep = detail::start("nearly-kahler", cfg, "", 0);
  const auto r = verify_nearly_kahler(1000, cfg.seed, 1e-8);
  rep.record("j_squared", r.j_squared_residual, cfg.tol("j_squared", 1e-12));
  rep.record("j_isometry", r.j_isometry_residual, cfg.tol("j_isometry", 1e-12));
  rep.record("g_diagonal", r.g_diagonal_residual, cfg.tol("g_diagonal", 1e-9));
  rep.record("g_alternating", r.g_alternating_residual, cfg.tol("g_alternating", 1e-8));
  return rep;
}

inline Report suite_structure_equations(const RunConfig& cfg) {
  const std::string id = cfg.catalog.empty() ? "tg-s3" : cfg.catalog;
  const CatalogEntry entry = find_catalog_entry(id);
  const Immersion imm = lagrangian_candidate(entry);
  Report rep = detail::start("structure-equations", cfg, id, imm.dim);
  const auto pts = sample_grid(imm.domain, cfg.resolution(imm.dim));
  std::vector<std::pair<CurvaturePackage, std::vector<double>>> pkgs;
  detail::Sweep real;
  detail::for_each_point(rep, imm, pts, 4, [&](CurvaturePackage pkg, const std::vector<double>& u) {
    real.add(totally_real_residual(frame_view(pkg)), u);
    pkgs.emplace_back(std::move(pkg), u);
  });
  const bool lagrangian = real.value <= kLagrangianTolerance;
  for (const auto& [pkg, u] : pkgs) {
    const auto s = structure_residuals(pkg);
    rep.record("h_symmetry", s.h_symmetry, cfg.tol("h_symmetry", 1e-9), u);
    rep.record("h_normality", s.h_normality, cfg.tol("h_normality", 1e-9), u);
    rep.record("curvature_symmetries", s.curvature_symmetries, cfg.tol("curvature_symmetries", 1e-8), u);
    rep.record("gauss", s.gauss, cfg.tol("gauss", 1e-7), u);
    rep.record("codazzi", s.codazzi, cfg.tol("codazzi", 1e-7), u);
    rep.record("ricci_identity", s.ricci_identity, cfg.tol("ricci_identity", 1e-6), u);
    if (!lagrangian) continue;
    rep.record("totally_real", totally_real_residual(frame_view(pkg)), cfg.tol("totally_real", 1e-9), u);
    rep.record("gauss_bracket_form", s.gauss_bracket, cfg.tol("gauss_bracket_form", 1e-7), u);
    rep.record("ricci_equation", s.ricci_equation, cfg.tol("ricci_equation", 1e-7), u);
    rep.record("ricci_gauss_form", s.ricci_gauss_form, cfg.tol("ricci_gauss_form", 1e-7), u);
    rep.record("shape_operator_j", s.shape_j, cfg.tol("shape_operator_j", 1e-8), u);
    rep.record("cubic_form_symmetry", s.cubic_symmetry, cfg.tol("cubic_form_symmetry", 1e-8), u);
    rep.record("normal_derivative_of_j", s.normal_j_derivative, cfg.tol("normal_derivative_of_j", 1e-7), u);
  }
  if (!lagrangian)
    rep.notes.push_back("conditional: " + imm.label + " is not totally real (residual " + detail::sci(real.value) +
                        "); Lagrangian structure equations not checked");
  return rep;
}

inline Report suite_tsinghua(const RunConfig& cfg) {
  const std::string id = cfg.catalog.empty() ? "tg-s3" : cfg.catalog;
  const CatalogEntry entry = find_catalog_entry(id);
  const Immersion imm = lagrangian_candidate(entry);
  Report rep = detail::start("tsinghua", cfg, id, imm.dim);
  const auto pts = sample_grid(imm.domain, cfg.resolution(imm.dim));
  detail::Sweep real;
  std::vector<std::pair<CurvaturePackage, std::vector<double>>> pkgs;
  detail::for_each_point(rep, imm, pts, 4, [&](CurvaturePackage pkg, const std::vector<double>& u) {
    real.add(totally_real_residual(frame_view(pkg)), u);
    pkgs.emplace_back(std::move(pkg), u);
  });
  if (real.value > kLagrangianTolerance) {
    rep.notes.push_back("conditional: " + imm.label + " is not totally real (residual " + detail::sci(real.value) +
                        "); the cyclic identities are stated for Lagrangian submanifolds only");
    return rep;
  }
  for (const auto& [pkg, u] : pkgs) {
    const FrameView f = frame_view(pkg);
    const auto n2 = nabla2_h(f);
    const auto t = verify_tsinghua_identity(f);
    rep.record("codazzi_derivative", n2.codazzi_derivative_residual, cfg.tol("codazzi_derivative", 1e-6), u);
    rep.record("cyclic_rperp_form", t.rperp_form, cfg.tol("cyclic_rperp_form", 1e-6), u);
    rep.record("cyclic_j_form", t.j_form, cfg.tol("cyclic_j_form", 1e-6), u);
    rep.record("cyclic_consistency", t.consistency, cfg.tol("cyclic_consistency", 1e-8), u);
    rep.record("ricci_identity", n2.ricci_identity_residual, cfg.tol("ricci_identity", 1e-6), u);
  }
  return rep;
}

inline Report suite_warped_oracle(const RunConfig& cfg) {
  Report rep = detail::start("warped-oracle", cfg, "", 3);
  std::mt19937_64 rng(cfg.seed);
  constexpr int kProducts = 20;
  for (int k = 0; k < kProducts; ++k) {
    const WarpedProduct wp = random_warped_product(rng);
    const auto pts = sample_grid(wp.domain(), cfg.resolution(3));
    const auto c = curvature_oracle_compare(wp, pts);
    rep.record("curvature_formulas_vs_intrinsic", c.residual, cfg.tol("curvature_formulas_vs_intrinsic", 1e-7), c.worst_point);
    rep.record("mixed_zero_components", c.mixed_zero, cfg.tol("mixed_zero_components", 1e-9), c.mixed_worst_point);
    for (const auto& p : pts) {
      // Brioschi against the intrinsic curvature of the fiber metric alone.
      const auto uv = coordinate_jets({p[1], p[2]}, 2);
      const auto [e, f, g] = wp.fiber_metric(uv);
      Tensor2<Jet> gn;
      gn[0][0] = e;
      gn[0][1] = gn[1][0] = f;
      gn[1][1] = g;
      const auto r = intrinsic_curvature(gn, 2);
      const double k_intrinsic = r[0][1][1][0] / (e.value() * g.value() - f.value() * f.value());
      rep.record("brioschi_vs_intrinsic", std::abs(gaussian_curvature_brioschi(e, f, g) - k_intrinsic),
                 cfg.tol("brioschi_vs_intrinsic", 1e-8), p);
    }
  }
  // dt^2 + cos^2 t (round unit metric): the unit sphere in polar form.
  const CatalogEntry s2 = find_catalog_entry("great-s2");
  const WarpedProduct round = rotation_warped_product(s2.surface->surface);
  for (const auto& p : sample_grid(round.domain(), cfg.resolution(3))) {
    rep.record("round_fiber_dichotomy", std::abs(dichotomy_scalar(round, p)), cfg.tol("round_fiber_dichotomy", 1e-10), p);
    const auto s = warped_sectional(round, p);
    rep.record("round_fiber_sectional", std::max(std::abs(s.radial - 1.0), std::abs(s.fiber - 1.0)),
               cfg.tol("round_fiber_sectional", 1e-7), p);
  }
  return rep;
}

// Rotation construction sin t n + cos t x(u, v) for a catalog surface: the
// induced metric for every surface, then the Lagrangian conclusions when the
// result is totally real.
inline Report suite_theorem1(const RunConfig& cfg) {
  const std::string id = cfg.catalog.empty() ? "great-s2" : cfg.catalog;
  const CatalogEntry entry = find_catalog_entry(id);
  if (!entry.surface) throw std::invalid_argument("theorem1 needs a surface catalog entry; '" + id + "' is not one");
  const SurfaceInS5& surf = *entry.surface;
  const Immersion rot = rotation_immersion(surf);
  const WarpedProduct wp = rotation_warped_product(surf.surface);
  Report rep = detail::start("theorem1", cfg, id, 3);
  const auto pts = sample_grid(rot.domain, cfg.resolution(3));

  rep.record("surface_in_s5", surface_in_s5_residual(surf), cfg.tol("surface_in_s5", 1e-10));

  // <x_t,x_t> = 1, <x_t,x_u> = <x_t,x_v> = 0, <x_a,x_b> = cos^2 t g(f_a, f_b).
  for (const auto& p : pts) {
    const auto x = rot.evaluate(p, 1);
    const auto fs = surf.surface.evaluate({p[1], p[2]}, 1);
    auto d = [](const Vec7<Jet>& v, int var) {
      Vector7 r;
      for (std::size_t a = 0; a < 7; ++a) r[a] = v[a].derivative(var).value();
      return r;
    };
    const Vector7 xt = d(x, 0), xu = d(x, 1), xv = d(x, 2), fu = d(fs, 0), fv = d(fs, 1);
    const double c2 = std::cos(p[0]) * std::cos(p[0]);
    rep.record("metric_tt", std::abs(dot(xt, xt) - 1.0), cfg.tol("metric_tt", 1e-10), p);
    rep.record("metric_t_fiber", std::max(std::abs(dot(xt, xu)), std::abs(dot(xt, xv))), cfg.tol("metric_t_fiber", 1e-10), p);
    rep.record("metric_fiber_warped",
               std::max({std::abs(dot(xu, xu) - c2 * dot(fu, fu)), std::abs(dot(xu, xv) - c2 * dot(fu, fv)),
                         std::abs(dot(xv, xv) - c2 * dot(fv, fv))}),
               cfg.tol("metric_fiber_warped", 1e-10), p);
  }

  std::vector<std::pair<CurvaturePackage, std::vector<double>>> pkgs;
  detail::Sweep real, hmax;
  detail::for_each_point(rep, rot, pts, 3, [&](CurvaturePackage pkg, const std::vector<double>& u) {
    real.add(totally_real_residual(frame_view(pkg)), u);
    hmax.add(detail::max_h(pkg), u);
    pkgs.emplace_back(std::move(pkg), u);
  });
  // Chen's inequality holds for every submanifold of the unit sphere.
  for (const auto& [pkg, u] : pkgs) {
    const auto d = delta_invariant(pkg);
    rep.record("chen_inequality", std::max(0.0, d.delta - d.chen_bound), cfg.tol("chen_inequality", 1e-6), u);
  }
  {
    // The ellipse of curvature of the surface is reported, not asserted.
    const auto c = surf.surface.domain.center();
    const auto spkg = analyze(surf.surface, c, 2);
    const double h = minimality_check(spkg);
    if (h > 1e-8) {
      rep.notes.push_back("surface mean curvature at the chart centre is " + detail::sci(h) + "; ellipse not examined");
    } else {
      const auto el = ellipse_circle_check(spkg);
      rep.notes.push_back(std::string("surface ellipse of curvature at the chart centre: ") +
                          (el.is_point ? "point" : el.is_circle ? "circle" : "ellipse") + " (semi-axes " +
                          detail::sci(el.major) + ", " + detail::sci(el.minor) + ")");
    }
  }

  const double real_tol = cfg.tol("totally_real", 1e-9);
  if (real.value > real_tol) {
    rep.notes.push_back("conditional: the rotation immersion of " + id + " is not totally real (residual " +
                        detail::sci(real.value) + " at t = " + detail::sci(real.point[0]) +
                        "); minimality, delta = 2 and the frame conclusions are not checked");
    return rep;
  }
  rep.record("totally_real", real.value, real_tol, real.point);

  const bool geodesic = hmax.value <= 1e-9;
  for (const auto& [pkg, u] : pkgs) {
    const auto d = delta_invariant(pkg);
    rep.record("minimality", minimality_check(pkg), cfg.tol("minimality", 1e-8), u);
    rep.record("delta_equality_gap", std::abs(d.equality_gap), cfg.tol("delta_equality_gap", 1e-6), u);
    rep.record("delta_two", std::abs(d.delta - 2.0), cfg.tol("delta_two", 1e-6), u);
    const FrameView f = frame_view(pkg);
    if (geodesic) {
      rep.record("second_fundamental_form_zero", detail::max_h(f), cfg.tol("second_fundamental_form_zero", 1e-9), u);
      rep.record("constant_curvature_one", detail::max_component(f.riemann, detail::unit_curvature(3), 3),
                 cfg.tol("constant_curvature_one", 1e-8), u);
      rep.record("dichotomy_scalar_zero", std::abs(dichotomy_scalar(wp, u)), cfg.tol("dichotomy_scalar_zero", 1e-10), u);
      continue;
    }
    const auto ric = ricci_quasi_einstein(pkg, 1e-6);
    rep.record("ricci_double_eigenvalue", ric.max_multiplicity >= 2 ? 0.0 : ric.smallest_gap,
               cfg.tol("ricci_double_eigenvalue", 1e-6), u);
    const auto dist = chen_distribution(pkg);
    rep.record("distribution_dimension_one", std::abs(dist.dimension - 1.0), cfg.tol("distribution_dimension_one", 0.0), u);
    if (dist.dimension == 1)
      rep.record("distribution_along_t", distribution_axis_angle(pkg, dist, 0), cfg.tol("distribution_along_t", 1e-6), u);
    const auto ff = frame_form_check(pkg, 0, 1e-7);
    rep.record("frame_form_case1", ff.tag == FrameForm::kCase1 ? 0.0 : 1.0, cfg.tol("frame_form_case1", 0.0), u);
    if (std::abs(dichotomy_scalar(wp, u)) > 1e-3) {
      rep.record("shape_operator_e1_eigen", ff.eigenvector_residual, cfg.tol("shape_operator_e1_eigen", 1e-6), u);
      rep.record("mu2_equals_mu3", std::abs(ff.mu2 - ff.mu3), cfg.tol("mu2_equals_mu3", 1e-6), u);
    }
  }
  if (!geodesic && rep.checks.end() == std::find_if(rep.checks.begin(), rep.checks.end(),
                                                    [](const Check& c) { return c.name == "mu2_equals_mu3"; }))
    rep.notes.push_back("conditional: no grid point with |dichotomy scalar| > 1e-3");
  return rep;
}

inline Report run_suite(const RunConfig& cfg, const std::string& suite) {
  cfg.validate();
  if (suite == "algebra") return suite_algebra(cfg);
  if (suite == "nearly-kahler") return suite_nearly_kahler(cfg);
  if (suite == "structure-equations") return suite_structure_equations(cfg);
  if (suite == "tsinghua") return suite_tsinghua(cfg);
  if (suite == "warped-oracle") return suite_warped_oracle(cfg);
  if (suite == "theorem1") return suite_theorem1(cfg);
  std::string known;
  for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
  throw std::invalid_argument("unknown suite '" + suite + "' (known: " + known + ")");
}

}  // namespace nks6
