#pragma once

// Pointwise invariants of a submanifold: sectional and scalar curvature,
// inf K over 2-planes, Chen's delta invariant, Ricci eigenstructure, mean
// curvature, the ellipse of curvature of a surface, Chen's distribution D and
// the normal forms of the cubic form <J h(X,Y), Z>.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "nks6/submanifold.hpp"

namespace nks6 {

// Two g-orthonormal tangent vectors, in chart coordinates.
struct PlaneSpec {
  std::array<double, kMaxDim> v{}, w{};
};

inline double metric_product(const CurvaturePackage& pkg, const std::array<double, kMaxDim>& a,
                             const std::array<double, kMaxDim>& b) {
  double s = 0.0;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) s += a[at(i)] * pkg.metric[at(i)][at(j)] * b[at(j)];
  return s;
}

// Gram-Schmidt of two chart vectors into a PlaneSpec.
inline PlaneSpec make_plane(const CurvaturePackage& pkg, std::array<double, kMaxDim> v, std::array<double, kMaxDim> w) {
  const double nv = std::sqrt(metric_product(pkg, v, v));
  if (!(nv > 0.0)) throw GeometryError("degenerate plane");
  for (auto& c : v) c /= nv;
  const double p = metric_product(pkg, v, w);
  for (int i = 0; i < kMaxDim; ++i) w[at(i)] -= p * v[at(i)];
  const double nw = std::sqrt(metric_product(pkg, w, w));
  if (!(nw > 1e-12 * nv)) throw GeometryError("degenerate plane");
  for (auto& c : w) c /= nw;
  return {v, w};
}

// K(v ^ w) = <R(v,w)w, v> for a g-orthonormal pair.
inline double sectional_curvature(const CurvaturePackage& pkg, const PlaneSpec& plane, double tolerance = 1e-10) {
  if (!pkg.has_curvature) throw GeometryError("sectional_curvature needs jet order >= 3");
  const double vv = metric_product(pkg, plane.v, plane.v), ww = metric_product(pkg, plane.w, plane.w),
               vw = metric_product(pkg, plane.v, plane.w);
  if (std::abs(vv - 1.0) > tolerance || std::abs(ww - 1.0) > tolerance || std::abs(vw) > tolerance)
    throw GeometryError("plane is not given by a g-orthonormal pair");
  const int d = pkg.dim;
  double k = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          k += plane.v[at(a)] * plane.w[at(b)] * plane.w[at(c)] * plane.v[at(e)] * pkg.riemann[at(a)][at(b)][at(c)][at(e)];
  return k;
}

// Sectional curvature of the plane spanned by orthonormal frame vectors.
inline double sectional_curvature(const FrameView& f, const FrameView::Coeffs& v, const FrameView::Coeffs& w) {
  const auto r = f.curvature(v, w, w);
  double k = 0.0;
  for (int e = 0; e < f.dim; ++e) k += r[at(e)] * v[at(e)];
  return k;
}

inline double scalar_curvature(const FrameView& f) {
  double tau = 0.0;
  for (int a = 0; a < f.dim; ++a)
    for (int b = a + 1; b < f.dim; ++b) tau += sectional_curvature(f, FrameView::unit(a), FrameView::unit(b));
  return tau;
}

// Ric(E_a, E_b) = sum_c <R(E_c, E_a) E_b, E_c>.
inline Mat3 ricci_tensor(const FrameView& f) {
  Mat3 ric{};
  for (int a = 0; a < f.dim; ++a)
    for (int b = 0; b < f.dim; ++b)
      for (int c = 0; c < f.dim; ++c) ric[at(a)][at(b)] += f.riemann[at(c)][at(a)][at(b)][at(c)];
  return ric;
}

struct DeltaReport {
  double tau = 0.0;
  double inf_k = 0.0;
  double grid_min_k = 0.0;
  PlaneSpec minimizing_plane;
  double delta = 0.0;
  double mean_curvature = 0.0;
  double chen_bound = 0.0;    // n^2(n-2)/(2(n-1)) |H|^2 + (n+1)(n-2)/2 with ambient curvature 1
  double equality_gap = 0.0;  // chen_bound - delta
  bool refinement_converged = false;
};

namespace detail {

struct PlaneMinimizer {
  const FrameView& f;

  // Orthonormal pair spanning the plane with unit normal n (frame coordinates).
  static std::pair<FrameView::Coeffs, FrameView::Coeffs> plane_of(const Eigen::Vector3d& n) {
    Eigen::Vector3d helper = std::abs(n.x()) < 0.6 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    const Eigen::Vector3d v = n.cross(helper).normalized();
    const Eigen::Vector3d w = n.cross(v).normalized();
    return {{v.x(), v.y(), v.z()}, {w.x(), w.y(), w.z()}};
  }
  double k_of_normal(const Eigen::Vector3d& n) const {
    const auto [v, w] = plane_of(n.normalized());
    return sectional_curvature(f, v, w);
  }
  static Eigen::Vector3d spherical(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  }
};

}  // namespace detail

// inf K over the Grassmannian of 2-planes of a 3-manifold, parametrised by
// the g-unit normal of the plane: a 64 x 32 spherical grid, then Newton steps
// on the local quadratic model in a chart centred at the grid minimiser.
inline DeltaReport delta_invariant(const CurvaturePackage& pkg) {
  if (pkg.dim != 3) throw GeometryError("delta_invariant is defined here for 3-dimensional submanifolds");
  if (!pkg.has_curvature) throw GeometryError("delta_invariant needs jet order >= 3");
  const FrameView f = frame_view(pkg);
  detail::PlaneMinimizer opt{f};
  DeltaReport rep;
  rep.tau = scalar_curvature(f);

  constexpr int kPhi = 64, kTheta = 32;
  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector3d best_n = Eigen::Vector3d::UnitZ();
  for (int it = 0; it < kTheta; ++it)
    for (int ip = 0; ip < kPhi; ++ip) {
      const double theta = std::numbers::pi * (it + 0.5) / kTheta;
      const double phi = 2.0 * std::numbers::pi * ip / kPhi;
      const Eigen::Vector3d n = detail::PlaneMinimizer::spherical(theta, phi);
      const double k = opt.k_of_normal(n);
      if (k < best) {
        best = k;
        best_n = n;
      }
    }
  rep.grid_min_k = best;

  // Newton in the tangent chart n(s) = normalize(n0 + s1 t1 + s2 t2).
  Eigen::Vector3d n0 = best_n;
  double k0 = best;
  bool converged = false;
  constexpr double kStep = 1e-4;
  for (int iter = 0; iter < 50; ++iter) {
    const auto [t1c, t2c] = detail::PlaneMinimizer::plane_of(n0);
    const Eigen::Vector3d t1(t1c[0], t1c[1], t1c[2]), t2(t2c[0], t2c[1], t2c[2]);
    auto k_at = [&](double s1, double s2) { return opt.k_of_normal(n0 + s1 * t1 + s2 * t2); };
    const double kc = k_at(0, 0);
    const Eigen::Vector2d grad((k_at(kStep, 0) - k_at(-kStep, 0)) / (2 * kStep),
                               (k_at(0, kStep) - k_at(0, -kStep)) / (2 * kStep));
    Eigen::Matrix2d hess;
    hess(0, 0) = (k_at(kStep, 0) - 2 * kc + k_at(-kStep, 0)) / (kStep * kStep);
    hess(1, 1) = (k_at(0, kStep) - 2 * kc + k_at(0, -kStep)) / (kStep * kStep);
    hess(0, 1) = hess(1, 0) =
        (k_at(kStep, kStep) - k_at(kStep, -kStep) - k_at(-kStep, kStep) + k_at(-kStep, -kStep)) / (4 * kStep * kStep);
    if (grad.norm() < 1e-12) {
      converged = true;
      break;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hess);
    if (es.eigenvalues().minCoeff() <= 1e-10) {
      // flat direction: the grid value is already a minimum to quadratic order
      converged = grad.norm() < 1e-6;
      break;
    }
    const Eigen::Vector2d step = -hess.ldlt().solve(grad);
    const Eigen::Vector3d n1 = (n0 + step(0) * t1 + step(1) * t2).normalized();
    const double k1 = opt.k_of_normal(n1);
    if (k1 > k0 + 1e-14) break;  // diverging; keep the best point so far
    n0 = n1;
    k0 = std::min(k0, k1);
    if (step.norm() < 1e-10) {
      converged = true;
      break;
    }
  }
  rep.refinement_converged = converged;
  rep.inf_k = std::min(k0, best);

  // Back to chart coordinates.
  const auto [v, w] = detail::PlaneMinimizer::plane_of(n0.normalized());
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) {
      rep.minimizing_plane.v[at(i)] += v[at(a)] * f.coeff[at(a)][at(i)];
      rep.minimizing_plane.w[at(i)] += w[at(a)] * f.coeff[at(a)][at(i)];
    }
  rep.delta = rep.tau - rep.inf_k;

  Vector7 mean;
  for (int a = 0; a < 3; ++a) mean += f.h[at(a)][at(a)];
  rep.mean_curvature = norm(mean) / 3.0;
  constexpr double n = 3.0;
  rep.chen_bound = n * n * (n - 2) / (2 * (n - 1)) * rep.mean_curvature * rep.mean_curvature + 0.5 * (n + 1) * (n - 2);
  rep.equality_gap = rep.chen_bound - rep.delta;
  return rep;
}

struct RicciReport {
  std::array<double, kMaxDim> eigenvalues{};  // ascending
  int dim = 0;
  int max_multiplicity = 1;
  double smallest_gap = 0.0;  // min distance between consecutive eigenvalues, relative
  double trace = 0.0;
  double tolerance = 1e-7;
  bool quasi_einstein() const { return max_multiplicity >= dim - 1; }
};

// Eigenvalues of the Ricci tensor; two coincide when their gap is within
// `tolerance` times max(spectral radius, 1).
inline RicciReport ricci_quasi_einstein(const CurvaturePackage& pkg, double tolerance = 1e-7) {
  if (!pkg.has_curvature) throw GeometryError("ricci_quasi_einstein needs jet order >= 3");
  const FrameView f = frame_view(pkg);
  const int d = f.dim;
  const Mat3 ric = ricci_tensor(f);
  Eigen::MatrixXd m(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m(a, b) = 0.5 * (ric[at(a)][at(b)] + ric[at(b)][at(a)]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  RicciReport r;
  r.dim = d;
  r.tolerance = tolerance;
  double radius = 0.0;
  for (int a = 0; a < d; ++a) {
    r.eigenvalues[at(a)] = es.eigenvalues()(a);
    r.trace += es.eigenvalues()(a);
    radius = std::max(radius, std::abs(es.eigenvalues()(a)));
  }
  const double scale = std::max(radius, 1.0);
  r.smallest_gap = std::numeric_limits<double>::infinity();
  int run = 1;
  for (int a = 1; a < d; ++a) {
    const double gap = (r.eigenvalues[at(a)] - r.eigenvalues[at(a - 1)]) / scale;
    r.smallest_gap = std::min(r.smallest_gap, gap);
    run = gap <= tolerance ? run + 1 : 1;
    r.max_multiplicity = std::max(r.max_multiplicity, run);
  }
  return r;
}

// |H| with H = (1/d) trace_g h.
inline double minimality_check(const CurvaturePackage& pkg) {
  Vector7 trace;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) trace += pkg.metric_inv[at(i)][at(j)] * pkg.h[at(i)][at(j)];
  return norm(trace) / pkg.dim;
}

// max |<J E_a, E_b>| over a g-orthonormal tangent frame at u.
inline double totally_real_check(const Immersion& imm, const std::vector<double>& u) {
  return totally_real_residual(frame_view(fundamental_data(imm, u)));
}

struct EllipseReport {
  double inner_residual = 0.0;   // |<h(e1,e1), h(e1,e2)>|
  double radius_residual = 0.0;  // | |h(e1,e1)| - |h(e1,e2)| |
  double major = 0.0, minor = 0.0;  // semi-axes of the ellipse
  bool is_point = false;
  bool is_circle = false;
};

// Ellipse {h(v,v) : |v| = 1} of a minimal surface, centred at H = 0.  The
// frame is the Gram-Schmidt frame rotated by `rotation` radians.
inline EllipseReport ellipse_circle_check(const CurvaturePackage& pkg, double rotation = 0.0, double tolerance = 1e-8) {
  if (pkg.dim != 2) throw GeometryError("ellipse of curvature is defined for surfaces");
  if (minimality_check(pkg) > tolerance)
    throw GeometryError("ellipse_circle_check needs a minimal surface (|H| = " + std::to_string(minimality_check(pkg)) + ")");
  const double c = std::cos(rotation), s = std::sin(rotation);
  const Mat3 rot{{{c, s, 0.0}, {-s, c, 0.0}, {0.0, 0.0, 1.0}}};
  const FrameView f = frame_view(pkg, rot);
  const Vector7& h11 = f.h[0][0];
  const Vector7& h12 = f.h[0][1];
  EllipseReport r;
  r.inner_residual = std::abs(dot(h11, h12));
  r.radius_residual = std::abs(norm(h11) - norm(h12));
  Eigen::Matrix2d gram;
  gram << dot(h11, h11), dot(h11, h12), dot(h11, h12), dot(h12, h12);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(gram);
  r.minor = std::sqrt(std::max(es.eigenvalues()(0), 0.0));
  r.major = std::sqrt(std::max(es.eigenvalues()(1), 0.0));
  r.is_point = r.major <= tolerance;
  r.is_circle = !r.is_point && r.inner_residual <= tolerance && r.radius_residual <= tolerance;
  return r;
}

struct DistributionReport {
  int dimension = 0;
  std::vector<std::array<double, kMaxDim>> basis_chart;  // chart coordinates
  std::vector<FrameView::Coeffs> basis_frame;            // orthonormal frame coordinates
  std::array<double, kMaxDim> singular_values{};
};

// D = {X : (n-1) h(X,Y) = n <X,Y> H for all Y}, solved as a null space.
inline DistributionReport chen_distribution(const CurvaturePackage& pkg, double tolerance = 1e-7) {
  if (pkg.dim != 3) throw GeometryError("chen_distribution is defined here for 3-dimensional submanifolds");
  const FrameView f = frame_view(pkg);
  const int n = 3;
  Vector7 mean;
  for (int a = 0; a < n; ++a) mean += f.h[at(a)][at(a)];
  mean *= 1.0 / n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(7 * n, n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      Vector7 col = (n - 1.0) * f.h[at(a)][at(b)];
      if (a == b) col -= double(n) * mean;
      for (int k = 0; k < 7; ++k) m(7 * b + k, a) = col[at(k)];
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  DistributionReport r;
  const double scale = std::max(1.0, svd.singularValues()(0));
  for (int a = 0; a < n; ++a) {
    r.singular_values[at(a)] = svd.singularValues()(a);
    if (svd.singularValues()(a) > tolerance * scale) continue;
    FrameView::Coeffs fc{};
    std::array<double, kMaxDim> cc{};
    for (int b = 0; b < n; ++b) fc[at(b)] = svd.matrixV()(b, a);
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < n; ++b) cc[at(i)] += fc[at(b)] * f.coeff[at(b)][at(i)];
    r.basis_frame.push_back(fc);
    r.basis_chart.push_back(cc);
  }
  r.dimension = static_cast<int>(r.basis_frame.size());
  return r;
}

// Angle between a one-dimensional D and the chart axis `axis`.
inline double distribution_axis_angle(const CurvaturePackage& pkg, const DistributionReport& dist, int axis) {
  if (dist.dimension != 1) throw GeometryError("distribution is not one-dimensional");
  std::array<double, kMaxDim> e{};
  e[at(axis)] = 1.0;
  const auto& v = dist.basis_chart.front();
  const double c = std::abs(metric_product(pkg, v, e)) /
                   std::sqrt(metric_product(pkg, v, v) * metric_product(pkg, e, e));
  return std::acos(std::min(1.0, c));
}

// kCase1: mu = 0 and a != 0.  kMixedBase: mu != 0, so J h(E2,E2) and J h(E3,E3)
// lean towards E1.
enum class FrameForm { kDegenerate, kCase1, kMixedBase, kNeither, kAmbiguous };

inline std::string to_string(FrameForm f) {
  switch (f) {
    case FrameForm::kDegenerate: return "degenerate";
    case FrameForm::kCase1: return "case1";
    case FrameForm::kMixedBase: return "mixed-base";
    case FrameForm::kNeither: return "neither";
    case FrameForm::kAmbiguous: return "ambiguous";
  }
  return "unknown";
}

// Coefficients of T(X,Y,Z) = <J h(X,Y), Z> in the adapted frame E1 (unit base
// direction), E2, E3, where E2 is a critical point of T(v,v,v) on the unit
// circle of E1-perp so that the coefficient d vanishes:
//   J h(E1,E1) = mu1 E1 (+ off-eigen part), J h(E1,Ek) = mu_k E_k,
//   J h(E2,E2) = mu E1 + a E2 + d E3, J h(E2,E3) = d E2 + b E3,
//   J h(E3,E3) = mu E1 + b E2 + c E3.
struct FrameFormReport {
  FrameForm tag = FrameForm::kNeither;
  double eigenvector_residual = 0.0;  // |T(E1,E1,.) - T(E1,E1,E1) E1|
  double mu1 = 0.0, mu2 = 0.0, mu3 = 0.0;
  double mu = 0.0, a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double normalization_residual = 0.0;  // max(|mu1 + 2 mu|, |b + a|, |c|)
  std::array<Vector7, 3> frame{};        // E1, E2, E3 in R^7
};

inline FrameFormReport frame_form_check(const CurvaturePackage& pkg, int base_axis = 0, double tolerance = 1e-7) {
  const FrameView f = frame_view(pkg);
  require_lagrangian(f, "frame_form_check");

  // E1 along the base axis, then an orthonormal completion.
  std::array<Vector7, 3> e;
  e[0] = normalized(pkg.tangents[at(base_axis)]);
  {
    int k = 1;
    for (int i = 0; i < 3 && k < 3; ++i) {
      if (i == base_axis) continue;
      Vector7 v = pkg.tangents[at(i)];
      for (int j = 0; j < k; ++j) v -= dot(v, e[at(j)]) * e[at(j)];
      e[at(k++)] = normalized(v);
    }
  }
  auto t = [&](const Vector7& x, const Vector7& y, const Vector7& z) {
    const auto cx = f.coefficients(x), cy = f.coefficients(y);
    return dot(f.j(f.second_form(cx, cy)), z);
  };

  FrameFormReport r;
  {
    const Vector7 je1e1 = f.j(f.second_form(f.coefficients(e[0]), f.coefficients(e[0])));
    r.mu1 = dot(je1e1, e[0]);
    r.eigenvector_residual = norm(je1e1 - r.mu1 * e[0]);
  }
  // Restriction of T(E1,.,.) to E1-perp.
  Eigen::Matrix2d block;
  block << t(e[0], e[1], e[1]), t(e[0], e[1], e[2]), t(e[0], e[2], e[1]), t(e[0], e[2], e[2]);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
  r.mu2 = es.eigenvalues()(0);
  r.mu3 = es.eigenvalues()(1);

  // Critical point of the binary cubic c(theta) = T(v,v,v) with the largest value.
  auto v_of = [&](double th) { return std::cos(th) * e[1] + std::sin(th) * e[2]; };
  auto cubic = [&](double th) {
    const Vector7 v = v_of(th);
    return t(v, v, v);
  };
  auto dcubic = [&](double th) {
    const Vector7 v = v_of(th);
    const Vector7 vp = -std::sin(th) * e[1] + std::cos(th) * e[2];
    return 3.0 * t(v, v, vp);
  };
  constexpr int kSamples = 360;
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSamples; ++k) {
    const double val = cubic(2.0 * std::numbers::pi * k / kSamples);
    if (val > best_val) {
      best_val = val;
      best = k;
    }
  }
  double lo = 2.0 * std::numbers::pi * (best - 1) / kSamples, hi = 2.0 * std::numbers::pi * (best + 1) / kSamples;
  double theta = 2.0 * std::numbers::pi * best / kSamples;
  if (dcubic(lo) > 0.0 && dcubic(hi) < 0.0) {
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (dcubic(mid) > 0.0 ? lo : hi) = mid;
    }
    theta = 0.5 * (lo + hi);
  }
  const Vector7 e2 = v_of(theta);
  const Vector7 e3 = -std::sin(theta) * e[1] + std::cos(theta) * e[2];
  r.frame = {e[0], e2, e3};
  r.mu = t(e2, e2, e[0]);
  r.a = t(e2, e2, e2);
  r.d = t(e2, e2, e3);
  r.b = t(e2, e3, e3);
  r.c = t(e3, e3, e3);
  r.normalization_residual = std::max({std::abs(r.mu1 + 2.0 * r.mu), std::abs(r.b + r.a), std::abs(r.c)});

  const double size = std::max({std::abs(r.mu1), std::abs(r.mu2), std::abs(r.mu3), std::abs(r.a), std::abs(r.b), std::abs(r.c)});
  const bool eigen_ok = r.eigenvector_residual <= tolerance;
  const double split = std::abs(r.mu3 - r.mu2);
  if (size <= tolerance) {
    r.tag = FrameForm::kDegenerate;
  } else if ((r.eigenvector_residual > tolerance && r.eigenvector_residual <= 100 * tolerance) ||
             (split > tolerance && split <= 100 * tolerance)) {
    r.tag = FrameForm::kAmbiguous;
  } else if (!eigen_ok || split > tolerance || r.normalization_residual > tolerance) {
    r.tag = FrameForm::kNeither;
  } else if (std::abs(r.mu) <= tolerance && std::abs(r.a) > tolerance) {
    r.tag = FrameForm::kCase1;
  } else {
    r.tag = FrameForm::kMixedBase;
  }
  return r;
}

}  // namespace nks6
