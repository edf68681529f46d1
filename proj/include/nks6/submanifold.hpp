#pragma once

// Extrinsic geometry of an immersion M^d -> S^6 (d = 2, 3) at a chart point:
// induced metric, Christoffel symbols, second fundamental form h, curvature R,
// normal curvature R^perp, and the covariant derivatives of h.  Everything is
// differentiated with jets; no finite differences are involved.
//
// Normal-valued tensors are stored as vectors of R^7.  The normal connection
// is D^perp_X xi = P^perp(d_X xi), where P^perp projects off the tangent space
// and the position vector.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nks6/cayley.hpp"
#include "nks6/immersion.hpp"
#include "nks6/jet.hpp"
#include "nks6/metric.hpp"
#include "nks6/nearly_kahler.hpp"

namespace nks6 {

using Mat7 = Eigen::Matrix<double, 7, 7>;
using Vec7e = Eigen::Matrix<double, 7, 1>;

inline Vec7e to_eigen(const Vector7& v) { return Eigen::Map<const Vec7e>(v.c.data()); }
inline Vector7 from_eigen(const Vec7e& v) {
  Vector7 r;
  for (std::size_t i = 0; i < 7; ++i) r[i] = v(static_cast<Eigen::Index>(i));
  return r;
}

struct CurvaturePackage {
  int dim = 0;
  int jet_order = 0;
  std::vector<double> point;
  std::string label;

  Vector7 position;
  std::array<Vector7, kMaxDim> tangents{};  // d_i x
  Mat3 metric{}, metric_inv{};
  Tensor3<double> christoffel{};  // [k][i][j]
  Tensor2<Vector7> h{};
  Mat7 normal_projector = Mat7::Zero();

  // Filled when jet_order >= 3.
  bool has_curvature = false;
  Tensor4<double> riemann{};                 // <R(d_i,d_j)d_k, d_l>
  Tensor2<Mat7> normal_curvature{};          // R^perp(d_i,d_j) acting on normal vectors
  Tensor3<Vector7> nabla_h{};                // (Dh)(d_k, d_i, d_j), index [k][i][j]
  // Filled when jet_order >= 2.
  Tensor2<Vector7> nabla_perp_j{};           // D^perp_{d_i}(J d_j)
  // Filled when jet_order >= 4.
  bool has_second_derivative = false;
  Tensor4<Vector7> nabla2_h{};               // (D^2 h)(d_m, d_k, d_i, d_j), index [m][k][i][j]
};

namespace detail {

inline Vec7<Jet> derivative(const Vec7<Jet>& v, int var) {
  Vec7<Jet> r;
  for (std::size_t a = 0; a < 7; ++a) r[a] = v[a].derivative(var);
  return r;
}

inline Vector7 values(const Vec7<Jet>& v) {
  Vector7 r;
  for (std::size_t a = 0; a < 7; ++a) r[a] = v[a].value();
  return r;
}

using JetMat7 = std::array<std::array<Jet, 7>, 7>;

inline Vec7<Jet> apply(const JetMat7& p, const Vec7<Jet>& v) {
  Vec7<Jet> r;
  for (std::size_t a = 0; a < 7; ++a) {
    Jet s = p[a][0] * v[0];
    for (std::size_t b = 1; b < 7; ++b) s += p[a][b] * v[b];
    r[a] = s;
  }
  return r;
}

inline Vector7 apply(const Mat7& p, const Vector7& v) { return from_eigen(p * to_eigen(v)); }

inline Mat7 values(const JetMat7& p) {
  Mat7 m;
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = 0; b < 7; ++b) m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = p[a][b].value();
  return m;
}

}  // namespace detail

inline constexpr double kSphereTolerance = 1e-10;
inline constexpr double kRankTolerance = 1e-8;
inline constexpr double kConditionLimit = 1e10;

// Computes every quantity the jet order allows: metric, Christoffels and h
// need order 2; R, R^perp and Dh need order 3; D^2 h needs order 4.
inline CurvaturePackage analyze(const Immersion& imm, const std::vector<double>& u, int order = 4) {
  if (order < 2 || order > kMaxJetOrder) throw std::invalid_argument("analyze needs jet order 2..4");
  if (static_cast<int>(u.size()) != imm.dim) throw std::invalid_argument("chart point has wrong dimension");
  if (!imm.domain.contains(u)) throw GeometryError("chart point outside the domain of " + imm.label);
  const int d = imm.dim;
  CurvaturePackage pkg;
  pkg.dim = d;
  pkg.jet_order = order;
  pkg.point = u;
  pkg.label = imm.label;

  const Vec7<Jet> x = imm.evaluate(u, order);
  pkg.position = detail::values(x);
  if (std::abs(norm(pkg.position) - 1.0) > kSphereTolerance)
    throw GeometryError(imm.label + " leaves S^6: |x| = " + std::to_string(norm(pkg.position)));

  std::array<Vec7<Jet>, kMaxDim> dx;
  for (int i = 0; i < d; ++i) {
    dx[at(i)] = detail::derivative(x, i);
    pkg.tangents[at(i)] = detail::values(dx[at(i)]);
  }

  Tensor2<Jet> g;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      g[at(i)][at(j)] = dot(dx[at(i)], dx[at(j)]);
      g[at(j)][at(i)] = g[at(i)][at(j)];
    }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pkg.metric[at(i)][at(j)] = g[at(i)][at(j)].value();
  {
    Eigen::MatrixXd gm(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) gm(i, j) = pkg.metric[at(i)][at(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gm);
    const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || std::sqrt(lo) <= kRankTolerance || hi / lo > kConditionLimit)
      throw GeometryError("degenerate induced metric on " + imm.label + " (condition number " +
                          std::to_string(hi / std::max(lo, 1e-300)) + ")");
  }

  const Tensor2<Jet> ginv = inverse(g, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pkg.metric_inv[at(i)][at(j)] = ginv[at(i)][at(j)].value();
  const Tensor3<Jet> gamma = christoffel(g, ginv, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) pkg.christoffel[at(k)][at(i)][at(j)] = gamma[at(k)][at(i)][at(j)].value();

  // P^perp = I - x x^T - sum g^kl d_k x d_l x^T
  detail::JetMat7 proj;
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = a; b < 7; ++b) {
      Jet s = -(x[a] * x[b]);
      if (a == b) s += 1.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s -= ginv[at(k)][at(l)] * dx[at(k)][a] * dx[at(l)][b];
      proj[a][b] = s;
      proj[b][a] = s;
    }
  pkg.normal_projector = detail::values(proj);

  // h_ij = d_ij x - Gamma^k_ij d_k x + g_ij x
  Tensor2<Vec7<Jet>> h;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Vec7<Jet> v = detail::derivative(dx[at(i)], j);
      for (int k = 0; k < d; ++k) v -= dx[at(k)] * gamma[at(k)][at(i)][at(j)];
      v += x * g[at(i)][at(j)];
      h[at(i)][at(j)] = v;
      h[at(j)][at(i)] = v;
      pkg.h[at(i)][at(j)] = pkg.h[at(j)][at(i)] = detail::values(v);
    }

  // D^perp_{d_i}(J d_j x)
  for (int j = 0; j < d; ++j) {
    const Vec7<Jet> jdj = cross(x, dx[at(j)]);
    for (int i = 0; i < d; ++i)
      pkg.nabla_perp_j[at(i)][at(j)] = detail::apply(pkg.normal_projector, detail::values(detail::derivative(jdj, i)));
  }

  if (order < 3) return pkg;

  pkg.has_curvature = true;
  pkg.riemann = riemann_lowered(g, gamma, d);

  // Normal curvature through the frame xi_a = P^perp e_a, which spans the
  // normal space at every point:
  // R^perp(d_i,d_j) xi_a = D_i D_j xi_a - D_j D_i xi_a.
  {
    std::array<Tensor2<Vector7>, 7> second{};  // [a][i][j] = D^perp_i D^perp_j xi_a
    for (std::size_t a = 0; a < 7; ++a) {
      Vec7<Jet> xi;
      for (std::size_t b = 0; b < 7; ++b) xi[b] = proj[b][a];
      for (int j = 0; j < d; ++j) {
        const Vec7<Jet> dj = detail::apply(proj, detail::derivative(xi, j));
        for (int i = 0; i < d; ++i)
          second[a][at(i)][at(j)] = detail::apply(pkg.normal_projector, detail::values(detail::derivative(dj, i)));
      }
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Mat7 m;
        for (std::size_t a = 0; a < 7; ++a)
          m.col(static_cast<Eigen::Index>(a)) = to_eigen(second[a][at(i)][at(j)] - second[a][at(j)][at(i)]);
        pkg.normal_curvature[at(i)][at(j)] = m;
      }
  }

  // (Dh)_kij = P^perp(d_k h_ij) - Gamma^l_ki h_lj - Gamma^l_kj h_il
  Tensor3<Vec7<Jet>> nh;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        Vec7<Jet> v = detail::apply(proj, detail::derivative(h[at(i)][at(j)], k));
        for (int l = 0; l < d; ++l) {
          v -= h[at(l)][at(j)] * gamma[at(l)][at(k)][at(i)];
          v -= h[at(i)][at(l)] * gamma[at(l)][at(k)][at(j)];
        }
        nh[at(k)][at(i)][at(j)] = v;
        nh[at(k)][at(j)][at(i)] = v;
        pkg.nabla_h[at(k)][at(i)][at(j)] = pkg.nabla_h[at(k)][at(j)][at(i)] = detail::values(v);
      }

  if (order < 4) return pkg;

  // (D^2 h)_mkij = P^perp(d_m (Dh)_kij) - Gamma^l_mk (Dh)_lij
  //                - Gamma^l_mi (Dh)_klj - Gamma^l_mj (Dh)_kil
  pkg.has_second_derivative = true;
  for (int m = 0; m < d; ++m)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          Vector7 v = detail::apply(pkg.normal_projector, detail::values(detail::derivative(nh[at(k)][at(i)][at(j)], m)));
          for (int l = 0; l < d; ++l) {
            v -= pkg.christoffel[at(l)][at(m)][at(k)] * pkg.nabla_h[at(l)][at(i)][at(j)];
            v -= pkg.christoffel[at(l)][at(m)][at(i)] * pkg.nabla_h[at(k)][at(l)][at(j)];
            v -= pkg.christoffel[at(l)][at(m)][at(j)] * pkg.nabla_h[at(k)][at(i)][at(l)];
          }
          pkg.nabla2_h[at(m)][at(k)][at(i)][at(j)] = pkg.nabla2_h[at(m)][at(k)][at(j)][at(i)] = v;
        }
  return pkg;
}

// Metric and Christoffel symbols (h is filled as well; it costs nothing extra).
inline CurvaturePackage fundamental_data(const Immersion& imm, const std::vector<double>& u) {
  return analyze(imm, u, 2);
}

inline CurvaturePackage second_fundamental_form(const Immersion& imm, const std::vector<double>& u) {
  return analyze(imm, u, 2);
}

// Everything up to D^2 h (order 4), or less for a lower order.
inline CurvaturePackage curvature_data(const Immersion& imm, const std::vector<double>& u, int order = 4) {
  return analyze(imm, u, order);
}

// ---------------------------------------------------------------------------
// Orthonormal frame view.  frame[a] = sum_i coeff[a][i] d_i is g-orthonormal;
// every tensor below is expressed in that frame.

struct FrameView {
  int dim = 0;
  Vector7 position;
  Mat3 coeff{};                       // E_a = sum_i coeff[a][i] d_i
  std::array<Vector7, kMaxDim> frame{};  // E_a in R^7
  Tensor2<Vector7> h{};
  bool has_curvature = false;
  bool has_second_derivative = false;
  Tensor4<double> riemann{};
  Tensor2<Mat7> normal_curvature{};
  Tensor3<Vector7> nabla_h{};
  Tensor4<Vector7> nabla2_h{};
  Mat7 normal_projector = Mat7::Zero();

  using Coeffs = std::array<double, kMaxDim>;

  Vector7 tangent(const Coeffs& w) const {
    Vector7 v;
    for (int a = 0; a < dim; ++a) v += w[at(a)] * frame[at(a)];
    return v;
  }
  Coeffs coefficients(const Vector7& tangent_vector) const {
    Coeffs c{};
    for (int a = 0; a < dim; ++a) c[at(a)] = dot(tangent_vector, frame[at(a)]);
    return c;
  }
  Vector7 j(const Vector7& v) const { return cross(position, v); }

  Vector7 second_form(const Coeffs& w1, const Coeffs& w2) const {
    Vector7 r;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) r += (w1[at(a)] * w2[at(b)]) * h[at(a)][at(b)];
    return r;
  }
  // R(w1, w2) w3 as frame coefficients.
  Coeffs curvature(const Coeffs& w1, const Coeffs& w2, const Coeffs& w3) const {
    Coeffs r{};
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c) {
          const double w = w1[at(a)] * w2[at(b)] * w3[at(c)];
          if (w == 0.0) continue;
          for (int e = 0; e < dim; ++e) r[at(e)] += w * riemann[at(a)][at(b)][at(c)][at(e)];
        }
    return r;
  }
  Vector7 normal_curvature_apply(const Coeffs& w1, const Coeffs& w2, const Vector7& xi) const {
    Mat7 m = Mat7::Zero();
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) m += (w1[at(a)] * w2[at(b)]) * normal_curvature[at(a)][at(b)];
    return detail::apply(m, xi);
  }
  static Coeffs unit(int a) {
    Coeffs c{};
    c[at(a)] = 1.0;
    return c;
  }
};

// Gram-Schmidt on the chart tangents in chart order, then rotated by
// `rotation` (rows give the new frame in terms of the Gram-Schmidt frame).
inline Mat3 orthonormal_coefficients(const CurvaturePackage& pkg) {
  const int d = pkg.dim;
  Mat3 c{};
  for (int a = 0; a < d; ++a) {
    std::array<double, kMaxDim> v{};
    v[at(a)] = 1.0;
    for (int b = 0; b < a; ++b) {
      double proj = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) proj += v[at(i)] * pkg.metric[at(i)][at(j)] * c[at(b)][at(j)];
      for (int i = 0; i < d; ++i) v[at(i)] -= proj * c[at(b)][at(i)];
    }
    double n2 = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) n2 += v[at(i)] * pkg.metric[at(i)][at(j)] * v[at(j)];
    for (int i = 0; i < d; ++i) c[at(a)][at(i)] = v[at(i)] / std::sqrt(n2);
  }
  return c;
}

inline FrameView frame_view(const CurvaturePackage& pkg, const std::optional<Mat3>& rotation = std::nullopt) {
  const int d = pkg.dim;
  Mat3 c = orthonormal_coefficients(pkg);
  if (rotation) {
    Mat3 r{};
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < d; ++i)
        for (int b = 0; b < d; ++b) r[at(a)][at(i)] += (*rotation)[at(a)][at(b)] * c[at(b)][at(i)];
    c = r;
  }
  FrameView f;
  f.dim = d;
  f.position = pkg.position;
  f.coeff = c;
  f.normal_projector = pkg.normal_projector;
  f.has_curvature = pkg.has_curvature;
  f.has_second_derivative = pkg.has_second_derivative;
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i) f.frame[at(a)] += c[at(a)][at(i)] * pkg.tangents[at(i)];

  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) f.h[at(a)][at(b)] += (c[at(a)][at(i)] * c[at(b)][at(j)]) * pkg.h[at(i)][at(j)];

  if (pkg.has_curvature) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        f.normal_curvature[at(a)][at(b)] = Mat7::Zero();
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            f.normal_curvature[at(a)][at(b)] += (c[at(a)][at(i)] * c[at(b)][at(j)]) * pkg.normal_curvature[at(i)][at(j)];
      }
    // Successive single-index contractions.
    Tensor4<double> t = pkg.riemann;
    for (int slot = 0; slot < 4; ++slot) {
      Tensor4<double> n{};
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s) {
              double v = 0.0;
              for (int k = 0; k < d; ++k) {
                std::array<int, 4> idx{p, q, r, s};
                const double coef = c[at(idx[at(slot)])][at(k)];
                idx[at(slot)] = k;
                v += coef * t[at(idx[0])][at(idx[1])][at(idx[2])][at(idx[3])];
              }
              n[at(p)][at(q)][at(r)][at(s)] = v;
            }
      t = n;
    }
    f.riemann = t;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e)
          for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
              for (int j = 0; j < d; ++j)
                f.nabla_h[at(a)][at(b)][at(e)] +=
                    (c[at(a)][at(k)] * c[at(b)][at(i)] * c[at(e)][at(j)]) * pkg.nabla_h[at(k)][at(i)][at(j)];
  }
  if (pkg.has_second_derivative) {
    Tensor4<Vector7> t = pkg.nabla2_h;
    for (int slot = 0; slot < 4; ++slot) {
      Tensor4<Vector7> n{};
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          for (int r = 0; r < d; ++r)
            for (int s = 0; s < d; ++s) {
              Vector7 v;
              for (int k = 0; k < d; ++k) {
                std::array<int, 4> idx{p, q, r, s};
                const double coef = c[at(idx[at(slot)])][at(k)];
                idx[at(slot)] = k;
                v += coef * t[at(idx[0])][at(idx[1])][at(idx[2])][at(idx[3])];
              }
              n[at(p)][at(q)][at(r)][at(s)] = v;
            }
      t = n;
    }
    f.nabla2_h = t;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Shape operator A_xi = g^-1 [<h_ij, xi>], as a mixed (1,1) matrix in chart
// coordinates: A_xi d_j = sum_i A[i][j] d_i.

inline Mat3 shape_operator(const CurvaturePackage& pkg, const Vector7& xi, double tolerance = 1e-8) {
  const int d = pkg.dim;
  const double scale = std::max(norm(xi), 1e-300);
  double off = std::abs(dot(xi, pkg.position));
  for (int i = 0; i < d; ++i) off = std::max(off, std::abs(dot(xi, pkg.tangents[at(i)])) / norm(pkg.tangents[at(i)]));
  if (off > tolerance * scale) throw GeometryError("shape operator requested for a non-normal vector");
  Mat3 lower{}, a{};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) lower[at(i)][at(j)] = dot(pkg.h[at(i)][at(j)], xi);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) a[at(i)][at(j)] += pkg.metric_inv[at(i)][at(k)] * lower[at(k)][at(j)];
  return a;
}

// Shape operator in an orthonormal frame: A[a][b] = <h(E_a, E_b), xi>.
inline Mat3 shape_operator(const FrameView& f, const Vector7& xi) {
  Mat3 a{};
  for (int p = 0; p < f.dim; ++p)
    for (int q = 0; q < f.dim; ++q) a[at(p)][at(q)] = dot(f.h[at(p)][at(q)], xi);
  return a;
}

// Largest |<J E_a, E_b>| over a g-orthonormal frame: 0 for totally real, 1
// when some tangent plane is J-invariant.
inline double totally_real_residual(const FrameView& f) {
  double r = 0.0;
  for (int a = 0; a < f.dim; ++a)
    for (int b = 0; b < f.dim; ++b) r = std::max(r, std::abs(dot(f.j(f.frame[at(a)]), f.frame[at(b)])));
  return r;
}

inline constexpr double kLagrangianTolerance = 1e-9;

inline bool is_lagrangian(const FrameView& f) { return f.dim == 3 && totally_real_residual(f) <= kLagrangianTolerance; }

inline void require_lagrangian(const FrameView& f, const char* what) {
  if (!is_lagrangian(f))
    throw GeometryError(std::string(what) + " needs a Lagrangian (3-dimensional totally real) immersion");
}
inline void require_curvature(const FrameView& f, const char* what) {
  if (!f.has_curvature) throw GeometryError(std::string(what) + " needs jet order >= 3");
}

// ---------------------------------------------------------------------------
// Curvature tensor two ways.

struct CurvatureComparison {
  Tensor4<double> intrinsic{};  // frame components <R(E_a,E_b)E_c, E_e>
  Tensor4<double> extrinsic{};
  bool lagrangian_form = false;  // bracket [A_JX, A_JY] form rather than general Gauss
  double residual = 0.0;
  double tolerance = 1e-7;
  bool agrees() const { return residual <= tolerance; }
};

enum class GaussForm { kAuto, kGeneral, kLagrangian };

// Extrinsic curvature from the Gauss equation, either in the general form
// <R(X,Y)Z,W> = <Y,Z><X,W> - <X,Z><Y,W> + <h(Y,Z),h(X,W)> - <h(X,Z),h(Y,W)>
// or, for Lagrangian immersions, R(X,Y)Z = <Y,Z>X - <X,Z>Y + [A_JX, A_JY]Z.
// The bracket form relies on the cubic form being symmetric, which needs the
// immersion to be totally real near the point, not only at it; kAuto picks it
// from the pointwise test.
inline CurvatureComparison curvature_tensor(const FrameView& f, double tolerance = 1e-7, GaussForm form = GaussForm::kAuto) {
  require_curvature(f, "curvature_tensor");
  const int d = f.dim;
  CurvatureComparison out;
  out.tolerance = tolerance;
  out.intrinsic = f.riemann;
  if (form == GaussForm::kLagrangian) require_lagrangian(f, "the bracket form of the Gauss equation");
  out.lagrangian_form = form == GaussForm::kAuto ? is_lagrangian(f) : form == GaussForm::kLagrangian;
  std::array<Mat3, kMaxDim> a_j{};
  if (out.lagrangian_form)
    for (int p = 0; p < d; ++p) a_j[at(p)] = shape_operator(f, f.j(f.frame[at(p)]));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          double v = (b == c) * (a == e) - (a == c) * (b == e);
          if (out.lagrangian_form) {
            // <[A_a, A_b] E_c, E_e> with symmetric frame matrices
            for (int k = 0; k < d; ++k)
              v += a_j[at(a)][at(e)][at(k)] * a_j[at(b)][at(k)][at(c)] - a_j[at(b)][at(e)][at(k)] * a_j[at(a)][at(k)][at(c)];
          } else {
            v += dot(f.h[at(b)][at(c)], f.h[at(a)][at(e)]) - dot(f.h[at(a)][at(c)], f.h[at(b)][at(e)]);
          }
          out.extrinsic[at(a)][at(b)][at(c)][at(e)] = v;
          out.residual = std::max(out.residual, std::abs(v - out.intrinsic[at(a)][at(b)][at(c)][at(e)]));
        }
  return out;
}

// Largest violation of R_abce = -R_bace = -R_abec = R_ceab and first Bianchi.
inline double curvature_symmetry_residual(const Tensor4<double>& r, int d) {
  double m = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const double v = r[at(a)][at(b)][at(c)][at(e)];
          m = std::max({m, std::abs(v + r[at(b)][at(a)][at(c)][at(e)]), std::abs(v + r[at(a)][at(b)][at(e)][at(c)]),
                        std::abs(v - r[at(c)][at(e)][at(a)][at(b)]),
                        std::abs(v + r[at(b)][at(c)][at(a)][at(e)] + r[at(c)][at(a)][at(b)][at(e)])});
        }
  return m;
}

// ---------------------------------------------------------------------------
// Normal curvature on the J-frame.

struct NormalCurvatureResult {
  Tensor3<Vector7> values{};       // R^perp(E_a, E_b) J E_c from the normal connection
  double bracket_residual = 0.0;   // vs J [A_JEa, A_JEb] E_c
  double gauss_residual = 0.0;     // vs J R(E_a,E_b)E_c + <E_a,E_c> J E_b - <E_b,E_c> J E_a
  double antisymmetry_residual = 0.0;
};

inline NormalCurvatureResult normal_curvature(const FrameView& f) {
  require_curvature(f, "normal_curvature");
  require_lagrangian(f, "normal_curvature");
  const int d = f.dim;
  NormalCurvatureResult out;
  std::array<Mat3, kMaxDim> a_j{};
  for (int p = 0; p < d; ++p) a_j[at(p)] = shape_operator(f, f.j(f.frame[at(p)]));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        const Vector7 jc = f.j(f.frame[at(c)]);
        const Vector7 v = f.normal_curvature_apply(FrameView::unit(a), FrameView::unit(b), jc);
        out.values[at(a)][at(b)][at(c)] = v;
        FrameView::Coeffs bracket{};
        for (int e = 0; e < d; ++e)
          for (int k = 0; k < d; ++k)
            bracket[at(e)] += a_j[at(a)][at(e)][at(k)] * a_j[at(b)][at(k)][at(c)] - a_j[at(b)][at(e)][at(k)] * a_j[at(a)][at(k)][at(c)];
        out.bracket_residual = std::max(out.bracket_residual, max_abs(v - f.j(f.tangent(bracket))));
        const auto rc = f.curvature(FrameView::unit(a), FrameView::unit(b), FrameView::unit(c));
        const Vector7 rhs = f.j(f.tangent(rc)) + double(a == c) * f.j(f.frame[at(b)]) - double(b == c) * f.j(f.frame[at(a)]);
        out.gauss_residual = std::max(out.gauss_residual, max_abs(v - rhs));
      }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      out.antisymmetry_residual =
          std::max(out.antisymmetry_residual, (f.normal_curvature[at(a)][at(b)] + f.normal_curvature[at(b)][at(a)]).cwiseAbs().maxCoeff());
  return out;
}

// ---------------------------------------------------------------------------
// Covariant derivative of h and the structure equations that involve it.

struct NablaHResult {
  Tensor3<Vector7> values{};        // (Dh)(E_a, E_b, E_c)
  double codazzi_residual = 0.0;    // (Dh)(X,Y,Z) - (Dh)(Y,X,Z)
  double total_symmetry_residual = 0.0;
  double normality_residual = 0.0;  // tangential or radial part of Dh
};

inline NablaHResult nabla_h(const FrameView& f) {
  require_curvature(f, "nabla_h");
  const int d = f.dim;
  NablaHResult out;
  out.values = f.nabla_h;
  const Mat7 tangential = Mat7::Identity() - f.normal_projector;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        const Vector7& v = f.nabla_h[at(a)][at(b)][at(c)];
        out.codazzi_residual = std::max(out.codazzi_residual, max_abs(v - f.nabla_h[at(b)][at(a)][at(c)]));
        out.total_symmetry_residual =
            std::max({out.total_symmetry_residual, max_abs(v - f.nabla_h[at(b)][at(a)][at(c)]),
                      max_abs(v - f.nabla_h[at(a)][at(c)][at(b)]), max_abs(v - f.nabla_h[at(c)][at(b)][at(a)])});
        out.normality_residual = std::max(out.normality_residual, max_abs(detail::apply(tangential, v)));
      }
  return out;
}

// D^perp_X JY - (G(X,Y) + J D_X Y) over coordinate fields, scaled by |d_i||d_j|.
inline double normal_derivative_of_j_residual(const CurvaturePackage& pkg) {
  const int d = pkg.dim;
  const PointS6 p(pkg.position, 1e-9);
  double r = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vector7 nabla_ij;
      for (int k = 0; k < d; ++k) nabla_ij += pkg.christoffel[at(k)][at(i)][at(j)] * pkg.tangents[at(k)];
      const Vector7 g = g_tensor(p, TangentVectorS6(p, pkg.tangents[at(i)], 1e-8), TangentVectorS6(p, pkg.tangents[at(j)], 1e-8));
      const Vector7 rhs = g + cross(pkg.position, nabla_ij);
      r = std::max(r, max_abs(pkg.nabla_perp_j[at(i)][at(j)] - rhs) / (norm(pkg.tangents[at(i)]) * norm(pkg.tangents[at(j)])));
    }
  return r;
}

struct NablaSquaredResult {
  Tensor4<Vector7> values{};
  double ricci_identity_residual = 0.0;  // antisymmetrised D^2 h vs curvature terms
  double codazzi_derivative_residual = 0.0;  // (D^2 h)(W,X,Y,Z) - (D^2 h)(W,Y,X,Z)
};

// Ricci identity:
// (D^2h)(X,Y,Z,W) - (D^2h)(Y,X,Z,W)
//   = R^perp(X,Y)h(Z,W) - h(R(X,Y)Z,W) - h(Z,R(X,Y)W).
inline NablaSquaredResult nabla2_h(const FrameView& f) {
  if (!f.has_second_derivative) throw GeometryError("nabla2_h needs jet order 4");
  const int d = f.dim;
  NablaSquaredResult out;
  out.values = f.nabla2_h;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const auto ua = FrameView::unit(a), ub = FrameView::unit(b), uc = FrameView::unit(c), ue = FrameView::unit(e);
          const Vector7 lhs = f.nabla2_h[at(a)][at(b)][at(c)][at(e)] - f.nabla2_h[at(b)][at(a)][at(c)][at(e)];
          const Vector7 rhs = f.normal_curvature_apply(ua, ub, f.h[at(c)][at(e)]) - f.second_form(f.curvature(ua, ub, uc), ue) -
                              f.second_form(uc, f.curvature(ua, ub, ue));
          out.ricci_identity_residual = std::max(out.ricci_identity_residual, max_abs(lhs - rhs));
          out.codazzi_derivative_residual =
              std::max(out.codazzi_derivative_residual,
                       max_abs(f.nabla2_h[at(a)][at(b)][at(c)][at(e)] - f.nabla2_h[at(a)][at(c)][at(b)][at(e)]));
        }
  return out;
}

// ---------------------------------------------------------------------------
// Cyclic identities obtained by differentiating Codazzi.

struct TsinghuaResult {
  double rperp_form = 0.0;    // |sum_cyc R^perp(W,X)h(Y,Z) - h(Y,R(W,X)Z)|
  double j_form = 0.0;        // |sum_cyc J R(W,X) J h(Y,Z) + h(Y,R(W,X)Z)|
  double consistency = 0.0;   // |R^perp form + J form|; the two differ by sign only
};

inline TsinghuaResult verify_tsinghua_identity(const FrameView& f, const FrameView::Coeffs& w, const FrameView::Coeffs& x,
                                               const FrameView::Coeffs& y, const FrameView::Coeffs& z) {
  require_curvature(f, "verify_tsinghua_identity");
  require_lagrangian(f, "verify_tsinghua_identity");
  const std::array<std::array<FrameView::Coeffs, 3>, 3> cyc{{{w, x, y}, {x, y, w}, {y, w, x}}};
  Vector7 rperp_sum, j_sum;
  for (const auto& t : cyc) {
    const auto& a = t[0];
    const auto& b = t[1];
    const auto& c = t[2];
    const Vector7 hcz = f.second_form(c, z);
    const Vector7 h_c_rz = f.second_form(c, f.curvature(a, b, z));
    rperp_sum += f.normal_curvature_apply(a, b, hcz) - h_c_rz;
    const auto jh = f.coefficients(f.j(hcz));  // J h(Y,Z) is tangent
    j_sum += f.j(f.tangent(f.curvature(a, b, jh))) + h_c_rz;
  }
  return {max_abs(rperp_sum), max_abs(j_sum), max_abs(rperp_sum + j_sum)};
}

// Maximum over all frame-vector choices W, X, Y, Z in {E_1, E_2, E_3}.
inline TsinghuaResult verify_tsinghua_identity(const FrameView& f) {
  TsinghuaResult worst;
  for (int w = 0; w < f.dim; ++w)
    for (int x = 0; x < f.dim; ++x)
      for (int y = 0; y < f.dim; ++y)
        for (int z = 0; z < f.dim; ++z) {
          const auto r = verify_tsinghua_identity(f, FrameView::unit(w), FrameView::unit(x), FrameView::unit(y), FrameView::unit(z));
          worst.rperp_form = std::max(worst.rperp_form, r.rperp_form);
          worst.j_form = std::max(worst.j_form, r.j_form);
          worst.consistency = std::max(worst.consistency, r.consistency);
        }
  return worst;
}

// ---------------------------------------------------------------------------
// Pointwise structure-equation residuals bundled for grid sweeps.

struct StructureResiduals {
  double h_symmetry = 0.0;
  double h_normality = 0.0;
  double curvature_symmetries = 0.0;
  double gauss = 0.0;            // general form
  double gauss_bracket = 0.0;    // [A_JX, A_JY] form
  double codazzi = 0.0;
  double ricci_equation = 0.0;   // R^perp vs J[A_JX, A_JY]
  double ricci_gauss_form = 0.0; // R^perp vs JR + <X,Z>JY - <Y,Z>JX
  double shape_j = 0.0;          // A_JY X + J h(X,Y)
  double cubic_symmetry = 0.0;   // <h(X,Y), JZ> totally symmetric
  double normal_j_derivative = 0.0;
  double ricci_identity = 0.0;
};

inline StructureResiduals structure_residuals(const CurvaturePackage& pkg) {
  const FrameView f = frame_view(pkg);
  const int d = f.dim;
  StructureResiduals r;
  const Mat7 tangential = Mat7::Identity() - f.normal_projector;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      r.h_symmetry = std::max(r.h_symmetry, max_abs(f.h[at(a)][at(b)] - f.h[at(b)][at(a)]));
      r.h_normality = std::max(r.h_normality, max_abs(detail::apply(tangential, f.h[at(a)][at(b)])));
    }
  if (f.has_curvature) {
    r.curvature_symmetries = curvature_symmetry_residual(f.riemann, d);
    r.gauss = curvature_tensor(f, 1e-7, GaussForm::kGeneral).residual;
    r.codazzi = nabla_h(f).codazzi_residual;
  }
  if (is_lagrangian(f)) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const Mat3 A = shape_operator(f, f.j(f.frame[at(b)]));
        FrameView::Coeffs col{};
        for (int e = 0; e < d; ++e) col[at(e)] = A[at(e)][at(a)];
        r.shape_j = std::max(r.shape_j, max_abs(f.tangent(col) + f.j(f.h[at(a)][at(b)])));
        for (int c = 0; c < d; ++c) {
          const double v = dot(f.h[at(a)][at(b)], f.j(f.frame[at(c)]));
          r.cubic_symmetry = std::max({r.cubic_symmetry, std::abs(v - dot(f.h[at(a)][at(c)], f.j(f.frame[at(b)]))),
                                       std::abs(v - dot(f.h[at(c)][at(b)], f.j(f.frame[at(a)])))});
        }
      }
    if (f.has_curvature) {
      r.gauss_bracket = curvature_tensor(f, 1e-7, GaussForm::kLagrangian).residual;
      const auto nc = normal_curvature(f);
      r.ricci_equation = nc.bracket_residual;
      r.ricci_gauss_form = nc.gauss_residual;
    }
  }
  r.normal_j_derivative = normal_derivative_of_j_residual(pkg);
  if (f.has_second_derivative) r.ricci_identity = nabla2_h(f).ricci_identity_residual;
  return r;
}

}  // namespace nks6
