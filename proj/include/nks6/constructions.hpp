#pragma once

// Concrete submanifolds: coordinate subspaces certified Lagrangian or almost
// complex, surfaces in totally geodesic 5-spheres, the rotation immersion
// sin t n + cos t x(u, v), linear fullness, and a catalog of named inputs.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nks6/immersion.hpp"
#include "nks6/nearly_kahler.hpp"
#include "nks6/submanifold.hpp"
#include "nks6/warped.hpp"

namespace nks6 {

// A surface lying in the great 5-sphere S^6 cap n-perp.
struct SurfaceInS5 {
  Immersion surface;
  Vector7 normal;
};

// Checks <x, n> = 0 and |n| = 1 on a 5 x 5 grid of the surface chart; returns
// the worst |<x, n>|.
inline double surface_in_s5_residual(const SurfaceInS5& s) {
  double worst = std::abs(norm(s.normal) - 1.0);
  for (const auto& u : sample_grid(s.surface.domain, {5, 5}))
    worst = std::max(worst, std::abs(dot(s.surface.position(u), s.normal)));
  return worst;
}

inline SurfaceInS5 make_surface_in_s5(Immersion surface, const Vector7& normal, double tolerance = 1e-10) {
  if (surface.dim != 2) throw std::invalid_argument("a surface needs a 2-dimensional chart");
  SurfaceInS5 s{std::move(surface), normal};
  const double r = surface_in_s5_residual(s);
  if (r > tolerance) throw GeometryError("surface does not lie in the 5-sphere orthogonal to n (residual " + std::to_string(r) + ")");
  return s;
}

// x(t, u, v) = sin t n + cos t x(u, v) for t in (-pi/2 + margin, pi/2 - margin).
inline Immersion rotation_immersion(const SurfaceInS5& s, double t_margin = 0.1) {
  Immersion m;
  m.dim = 3;
  m.domain.lower = {-std::numbers::pi / 2 + t_margin, s.surface.domain.lower[0], s.surface.domain.lower[1]};
  m.domain.upper = {std::numbers::pi / 2 - t_margin, s.surface.domain.upper[0], s.surface.domain.upper[1]};
  m.label = "rotation:" + s.surface.label;
  m.map = [surf = s.surface.map, n = s.normal](const std::vector<Jet>& x) {
    const Vec7<Jet> f = surf({x[1], x[2]});
    const Jet st = sin(x[0]), ct = cos(x[0]);
    Vec7<Jet> r;
    for (std::size_t a = 0; a < 7; ++a) r[a] = ct * f[a] + st * n[a];
    return r;
  };
  return m;
}

enum class SubspaceTag { kLagrangian, kAlmostComplex, kTotallyReal, kMixed };

inline std::string to_string(SubspaceTag t) {
  switch (t) {
    case SubspaceTag::kLagrangian: return "lagrangian";
    case SubspaceTag::kAlmostComplex: return "almost-complex";
    case SubspaceTag::kTotallyReal: return "totally-real";
    case SubspaceTag::kMixed: return "mixed";
  }
  return "unknown";
}

// Great sphere V cap S^6 for a coordinate subspace V = span{e_i}.
//   real_residual    = max |P_V(p x U)|     (J maps T into the normal space)
//   complex_residual = max |P_V-perp(p x U)| (J preserves T)
// over p in V cap S^6, U in V, U perp p, |U| = 1.
struct SubspaceCertificate {
  std::vector<int> indices;  // 1-based
  double real_residual = 0.0;
  double complex_residual = 0.0;
  SubspaceTag tag = SubspaceTag::kMixed;
};

inline SubspaceCertificate certify_subspace(const std::vector<int>& indices, int samples = 64, std::uint64_t seed = 1,
                                            double tolerance = 1e-12) {
  SubspaceCertificate c;
  c.indices = indices;
  auto project = [&](const Vector7& v) {
    Vector7 r;
    for (int i : indices) r[at(i - 1)] = v[at(i - 1)];
    return r;
  };
  auto probe = [&](const Vector7& p, Vector7 u) {
    u -= dot(u, p) * p;
    const double nu = norm(u);
    if (nu < 1e-8) return;
    const Vector7 ju = cross(p, u * (1.0 / nu));
    const Vector7 inside = project(ju);
    c.real_residual = std::max(c.real_residual, norm(inside));
    c.complex_residual = std::max(c.complex_residual, norm(ju - inside));
  };
  for (int i : indices)
    for (int j : indices)
      if (i != j) probe(basis(i), basis(j));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_in_v = [&] {
    Vector7 v;
    for (int i : indices) v[at(i - 1)] = normal(rng);
    return v;
  };
  for (int s = 0; s < samples; ++s) probe(normalized(random_in_v()), random_in_v());
  const bool real = c.real_residual <= tolerance, complex = c.complex_residual <= tolerance;
  if (indices.size() == 4)
    c.tag = real ? SubspaceTag::kLagrangian : SubspaceTag::kMixed;
  else if (complex)
    c.tag = SubspaceTag::kAlmostComplex;
  else if (real)
    c.tag = SubspaceTag::kTotallyReal;
  return c;
}

namespace detail {

inline void combinations(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

// All C(7, 4) coordinate 4-subspaces (Lagrangian great S^3 candidates) and
// all C(7, 3) coordinate 3-subspaces (almost complex great S^2 candidates),
// in lexicographic order.
inline std::vector<SubspaceCertificate> search_lagrangian_subspaces(int samples = 64, std::uint64_t seed = 1) {
  std::vector<SubspaceCertificate> out;
  for (int k : {4, 3}) {
    std::vector<std::vector<int>> combos;
    std::vector<int> cur;
    detail::combinations(7, k, 1, cur, combos);
    for (const auto& idx : combos) out.push_back(certify_subspace(idx, samples, seed));
  }
  return out;
}

struct LinearFullness {
  int dimension = 0;                     // dim of the linear span of the image
  std::vector<double> singular_values;  // of the sample matrix scaled by 1/sqrt(N)
  std::vector<Vector7> normals;         // orthonormal basis of the orthogonal complement
  std::optional<Vector7> ambient_normal;  // the unit n when dimension == 6
};

// Span of the image from about `samples` grid positions.  Singular values
// above 1e-8 count; a ratio below 10 across that boundary is refused as
// ambiguous.
inline LinearFullness linear_fullness(const Immersion& imm, int samples = 343) {
  if (samples < 8) throw std::invalid_argument("linear_fullness needs at least 8 samples");
  const int per_axis = std::max(2, static_cast<int>(std::ceil(std::pow(samples, 1.0 / imm.dim) - 1e-9)));
  const auto pts = sample_grid(imm.domain, std::vector<int>(at(imm.dim), per_axis));
  Eigen::MatrixXd x(static_cast<Eigen::Index>(pts.size()), 7);
  for (std::size_t r = 0; r < pts.size(); ++r) {
    const Vector7 p = imm.position(pts[r]);
    for (int a = 0; a < 7; ++a) x(static_cast<Eigen::Index>(r), a) = p[at(a)];
  }
  x /= std::sqrt(static_cast<double>(pts.size()));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeFullV);
  constexpr double kThreshold = 1e-8;
  LinearFullness lf;
  for (int a = 0; a < static_cast<int>(svd.singularValues().size()); ++a) {
    lf.singular_values.push_back(svd.singularValues()(a));
    if (svd.singularValues()(a) > kThreshold) ++lf.dimension;
  }
  if (lf.dimension > 0 && lf.dimension < 7) {
    const double above = lf.singular_values[at(lf.dimension - 1)], below = lf.singular_values[at(lf.dimension)];
    if (above < 10.0 * below)
      throw GeometryError("linear span is numerically ambiguous (singular values " + std::to_string(above) + ", " +
                          std::to_string(below) + ")");
  }
  for (int a = lf.dimension; a < 7; ++a) {
    Vector7 n;
    for (int b = 0; b < 7; ++b) n[at(b)] = svd.matrixV()(b, a);
    lf.normals.push_back(n);
  }
  if (lf.dimension == 6) lf.ambient_normal = lf.normals.front();
  return lf;
}

// --- catalog --------------------------------------------------------------

// Hyperspherical chart of the unit 3-sphere in span{e_i, e_j, e_k, e_l}.
inline Immersion great_three_sphere(const std::vector<int>& idx) {
  if (idx.size() != 4) throw std::invalid_argument("great_three_sphere needs four indices");
  const double m = 0.1;
  Immersion s;
  s.dim = 3;
  s.domain = ChartBox{{m, m, -std::numbers::pi + m}, {std::numbers::pi - m, std::numbers::pi - m, std::numbers::pi - m}};
  s.label = "great-s3";
  s.map = [idx](const std::vector<Jet>& u) {
    Vec7<Jet> x;
    for (auto& c : x.c) c = zero_like(u[0]);
    const Jet sa = sin(u[0]), sb = sin(u[1]);
    x[at(idx[0] - 1)] = cos(u[0]);
    x[at(idx[1] - 1)] = sa * cos(u[1]);
    x[at(idx[2] - 1)] = sa * sb * cos(u[2]);
    x[at(idx[3] - 1)] = sa * sb * sin(u[2]);
    return x;
  };
  return s;
}

// Sphere of Euclidean radius r in span{e_i, e_j, e_k} shifted by sqrt(1 - r^2) e_l;
// r = 1 is a great 2-sphere.
inline Immersion two_sphere(const std::vector<int>& idx, double radius = 1.0) {
  if (idx.size() != 4) throw std::invalid_argument("two_sphere needs three span indices and one offset index");
  const double m = 0.1, offset = std::sqrt(1.0 - radius * radius);
  Immersion s;
  s.dim = 2;
  s.domain = ChartBox{{m, -std::numbers::pi + m}, {std::numbers::pi - m, std::numbers::pi - m}};
  s.label = radius == 1.0 ? "great-s2" : "small-s2";
  s.map = [idx, radius, offset](const std::vector<Jet>& u) {
    Vec7<Jet> x;
    for (auto& c : x.c) c = zero_like(u[0]);
    const Jet sa = sin(u[0]) * radius;
    x[at(idx[0] - 1)] = sa * cos(u[1]);
    x[at(idx[1] - 1)] = sa * sin(u[1]);
    x[at(idx[2] - 1)] = cos(u[0]) * radius;
    x[at(idx[3] - 1)] += offset;
    return x;
  };
  return s;
}

// Torus (1/sqrt 3) sum_k (cos a_k e_k + sin a_k (n x e_k)) for k = 1, 2, 3 with
// n = e7, a = (u, v, phase - u - v).
inline Immersion phase_torus(double phase) {
  Immersion s;
  s.dim = 2;
  s.domain = ChartBox{{0.0, 0.0}, {2 * std::numbers::pi, 2 * std::numbers::pi}};
  s.label = "torus";
  s.map = [phase](const std::vector<Jet>& u) {
    const double c = 1.0 / std::sqrt(3.0);
    const std::array<Jet, 3> a{u[0], u[1], phase - u[0] - u[1]};
    Vec7<Jet> x;
    for (auto& e : x.c) e = zero_like(u[0]);
    for (int k = 0; k < 3; ++k) {
      const auto [idx, sign] = basis_cross(7, k + 1);
      x[at(k)] += cos(a[at(k)]) * c;
      x[at(idx - 1)] += sin(a[at(k)]) * (c * sign);
    }
    return x;
  };
  return s;
}

// The flat torus (1/sqrt 3)(e^{i u}, e^{i v}, e^{-i(u+v)}) with the complex
// coordinates read off the coordinate pairs (e1,e2), (e3,e4), (e5,e6).
inline Immersion pair_torus() {
  Immersion s;
  s.dim = 2;
  s.domain = ChartBox{{0.0, 0.0}, {2 * std::numbers::pi, 2 * std::numbers::pi}};
  s.label = "flat-torus";
  s.map = [](const std::vector<Jet>& u) {
    const double c = 1.0 / std::sqrt(3.0);
    const Jet w = -u[0] - u[1];
    Vec7<Jet> x;
    x[0] = cos(u[0]) * c;
    x[1] = sin(u[0]) * c;
    x[2] = cos(u[1]) * c;
    x[3] = sin(u[1]) * c;
    x[4] = cos(w) * c;
    x[5] = sin(w) * c;
    x[6] = zero_like(u[0]);
    return x;
  };
  return s;
}

// normalize(x + eps sin u e_k) for a surface x: a deformation that keeps the
// image in the same great 5-sphere when e_k is orthogonal to its normal.
inline Immersion perturbed_surface(const Immersion& base, int k, double eps) {
  Immersion s = base;
  s.label = "perturbed";
  s.map = [map = base.map, k, eps](const std::vector<Jet>& u) {
    Vec7<Jet> x = map(u);
    x[at(k - 1)] += sin(u[0]) * eps;
    Jet n2 = zero_like(u[0]);
    for (const auto& c : x.c) n2 += c * c;
    const Jet inv = reciprocal(sqrt(n2));
    for (auto& c : x.c) c = c * inv;
    return x;
  };
  return s;
}

struct CatalogEntry {
  std::string id;
  std::string description;
  Immersion immersion;                 // the surface itself for surface entries
  std::optional<SurfaceInS5> surface;  // present for surfaces in a great S^5
};

// Phase of the third angle for which the cone over phase_torus is totally real.
inline constexpr double kLagrangianTorusPhase = std::numbers::pi / 2;

inline std::vector<CatalogEntry> catalog() {
  const auto certs = search_lagrangian_subspaces();
  std::vector<int> lag;
  for (const auto& c : certs)
    if (c.tag == SubspaceTag::kLagrangian) {
      lag = c.indices;
      break;
    }
  if (lag.empty()) throw GeometryError("no Lagrangian coordinate 4-subspace found");

  std::vector<CatalogEntry> out;
  {
    Immersion s3 = great_three_sphere(lag);
    s3.label = "tg-s3";
    out.push_back({"tg-s3", "totally geodesic Lagrangian 3-sphere in a certified coordinate 4-space", s3, std::nullopt});
  }
  {
    Immersion s2 = two_sphere({lag[0], lag[1], lag[2], lag[3]}, 1.0);
    auto surf = make_surface_in_s5(s2, basis(lag[3]));
    out.push_back({"great-s2", "totally geodesic 2-sphere spanned by three of those axes", s2, surf});
  }
  {
    Immersion t = pair_torus();
    auto surf = make_surface_in_s5(t, basis(7));
    out.push_back({"flat-torus", "flat torus on the coordinate pairs (e1,e2), (e3,e4), (e5,e6)", t, surf});
  }
  {
    Immersion t = phase_torus(kLagrangianTorusPhase);
    t.label = "lagrangian-torus";
    auto surf = make_surface_in_s5(t, basis(7));
    out.push_back({"lagrangian-torus", "flat torus on the pairs (e_k, e7 x e_k) with a totally real cone", t, surf});
  }
  {
    Immersion p = perturbed_surface(phase_torus(kLagrangianTorusPhase), 1, 0.2);
    auto surf = make_surface_in_s5(p, basis(7));
    out.push_back({"perturbed", "the Lagrangian-cone torus pushed along e1 by 0.2 sin u", p, surf});
  }
  {
    // offset axis lag[3]; the sphere lies in span{lag}, orthogonal to every other axis
    int n = 1;
    while (std::find(lag.begin(), lag.end(), n) != lag.end()) ++n;
    Immersion s2 = two_sphere({lag[0], lag[1], lag[2], lag[3]}, 0.8);
    auto surf = make_surface_in_s5(s2, basis(n));
    out.push_back({"small-s2", "umbilic 2-sphere of radius 0.8", s2, surf});
  }
  return out;
}

inline CatalogEntry find_catalog_entry(const std::string& id) {
  for (auto& e : catalog())
    if (e.id == id) return e;
  std::string known;
  for (const auto& e : catalog()) known += (known.empty() ? "" : ", ") + e.id;
  throw std::invalid_argument("unknown catalog id '" + id + "' (known: " + known + ")");
}

// The 3-dimensional submanifold that the Lagrangian suites study: the entry
// itself when 3-dimensional, otherwise the rotation immersion of its surface.
inline Immersion lagrangian_candidate(const CatalogEntry& e) {
  if (e.immersion.dim == 3) return e.immersion;
  if (!e.surface) throw GeometryError("catalog entry '" + e.id + "' has no 3-dimensional form");
  return rotation_immersion(*e.surface);
}

}  // namespace nks6
