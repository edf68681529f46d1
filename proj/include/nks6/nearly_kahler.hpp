#pragma once

// The almost complex structure J_p U = p x U on the unit sphere S^6 of the
// imaginary Cayley numbers and its covariant derivative G(X,Y) = (D_X J)Y.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nks6/cayley.hpp"
#include "nks6/jet.hpp"

namespace nks6 {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PointS6 {
 public:
  explicit PointS6(const Vector7& position, double tolerance = 1e-12) : position_(position) {
    if (std::abs(norm(position) - 1.0) > tolerance)
      throw GeometryError("point is not on the unit sphere: |p| = " + std::to_string(norm(position)));
  }

  // Projects a nonzero vector radially onto the sphere.
  static PointS6 from_direction(const Vector7& v) { return PointS6(normalized(v)); }

  const Vector7& position() const { return position_; }

 private:
  Vector7 position_;
};

class TangentVectorS6 {
 public:
  TangentVectorS6(const PointS6& base, const Vector7& direction, double tolerance = 1e-10)
      : base_(base), direction_(direction) {
    if (std::abs(dot(base.position(), direction)) > tolerance * norm(direction))
      throw GeometryError("vector is not tangent to S^6 at its base point");
  }

  const PointS6& base() const { return base_; }
  const Vector7& direction() const { return direction_; }

 private:
  PointS6 base_;
  Vector7 direction_;
};

inline TangentVectorS6 project_tangent(const PointS6& p, const Vector7& v) {
  const Vector7& x = p.position();
  return TangentVectorS6(p, v - dot(v, x) * x);
}

inline TangentVectorS6 almost_complex(const PointS6& p, const TangentVectorS6& u) {
  if (max_abs(u.base().position() - p.position()) > 1e-12)
    throw GeometryError("tangent vector is based at a different point");
  return TangentVectorS6(p, cross(p.position(), u.direction()));
}

// J applied to a vector field given as jets; no tangency check.
template <class T>
Vec7<T> apply_j(const Vec7<T>& position, const Vec7<T>& v) {
  return cross(position, v);
}

namespace detail {

// Great circle through p with initial velocity X, as order-1 jets in t at t = 0,
// and the tangential extension Y(t) = Y - <Y, gamma(t)> gamma(t).
struct CurveJets {
  Vec7<Jet> gamma, y_ext;
};

inline CurveJets curve_jets(const Vector7& p, const Vector7& x, const Vector7& y, int order) {
  const double speed = norm(x);
  const Jet t = Jet::variable(1, order, 0, 0.0);
  const Jet c = cos(t * speed), s = sin(t * speed);
  CurveJets out;
  for (std::size_t i = 0; i < 7; ++i) out.gamma[i] = c * p[i] + s * (x[i] / speed);
  Jet proj = zero_like(c);
  for (std::size_t i = 0; i < 7; ++i) proj += out.gamma[i] * y[i];
  for (std::size_t i = 0; i < 7; ++i) out.y_ext[i] = Jet::constant(1, order, y[i]) - proj * out.gamma[i];
  return out;
}

inline Vector7 tangential(const Vector7& p, const Vector7& v) { return v - dot(v, p) * p; }

}  // namespace detail

// G(X,Y) = D_X(J Y~) - J(D_X Y~) with Y~ the projected constant extension of Y,
// both covariant derivatives taken along the great circle through p in
// direction X and differentiated with jets.
inline Vector7 g_tensor(const PointS6& p, const TangentVectorS6& x, const TangentVectorS6& y) {
  const Vector7& pos = p.position();
  if (norm(x.direction()) == 0.0) return Vector7{};
  const auto curve = detail::curve_jets(pos, x.direction(), y.direction(), 1);
  const Vec7<Jet> jy = cross(curve.gamma, curve.y_ext);
  Vector7 d_jy, d_y;
  for (std::size_t i = 0; i < 7; ++i) {
    d_jy[i] = jy[i].partial({1, 0, 0});
    d_y[i] = curve.y_ext[i].partial({1, 0, 0});
  }
  const Vector7 cov_jy = detail::tangential(pos, d_jy);
  const Vector7 cov_y = detail::tangential(pos, d_y);
  return cov_jy - cross(pos, cov_y);
}

struct NKFailure {
  std::string identity;
  double residual = 0.0;
};

struct NKReport {
  int samples = 0;
  double j_squared_residual = 0.0;   // |J J X + X| / |X|
  double j_isometry_residual = 0.0;  // |<JX,JY> - <X,Y>| / (|X||Y|)
  double g_diagonal_residual = 0.0;  // |G(X,X)| / |X|^2
  double g_alternating_residual = 0.0;  // antisymmetry of <G(X,Y),Z> in all slots
  double tolerance = 0.0;
  std::vector<NKFailure> failures;

  bool passed() const { return failures.empty(); }
};

namespace detail {

inline Vector7 random_gaussian7(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector7 v;
  for (std::size_t i = 0; i < 7; ++i) v[i] = normal(rng);
  return v;
}

}  // namespace detail

// Random point on S^6 and random tangent vector there.
inline PointS6 random_point(std::mt19937_64& rng) { return PointS6::from_direction(detail::random_gaussian7(rng)); }

inline TangentVectorS6 random_tangent(const PointS6& p, std::mt19937_64& rng) {
  return project_tangent(p, detail::random_gaussian7(rng));
}

// Samples random (p, X, Y, Z) and checks J^2 = -Id, J isometric, G(X,X) = 0 and
// total antisymmetry of <G(X,Y),Z>.  The last is a known property of the
// nearly Kaehler S^6 checked here as an external fact.
inline NKReport verify_nearly_kahler(int samples, std::uint64_t seed = 1, double tolerance = 1e-8) {
  if (samples < 1) throw std::invalid_argument("verify_nearly_kahler needs at least one sample");
  NKReport r;
  r.samples = samples;
  r.tolerance = tolerance;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const PointS6 p = random_point(rng);
    const TangentVectorS6 x = random_tangent(p, rng), y = random_tangent(p, rng), z = random_tangent(p, rng);
    const double nx = norm(x.direction()), ny = norm(y.direction()), nz = norm(z.direction());
    const auto jx = almost_complex(p, x);
    const auto jjx = almost_complex(p, jx);
    r.j_squared_residual = std::max(r.j_squared_residual, norm(jjx.direction() + x.direction()) / nx);
    const auto jy = almost_complex(p, y);
    r.j_isometry_residual = std::max(
        r.j_isometry_residual,
        std::abs(dot(jx.direction(), jy.direction()) - dot(x.direction(), y.direction())) / (nx * ny));
    r.g_diagonal_residual = std::max(r.g_diagonal_residual, norm(g_tensor(p, x, x)) / (nx * nx));
    const double gxyz = dot(g_tensor(p, x, y), z.direction());
    const double gyxz = dot(g_tensor(p, y, x), z.direction());
    const double gxzy = dot(g_tensor(p, x, z), y.direction());
    const double scale = nx * ny * nz;
    r.g_alternating_residual =
        std::max({r.g_alternating_residual, std::abs(gxyz + gyxz) / scale, std::abs(gxyz + gxzy) / scale});
  }
  auto flag = [&](const char* name, double v) {
    if (v > tolerance) r.failures.push_back({name, v});
  };
  flag("J^2 = -Id", r.j_squared_residual);
  flag("<JX,JY> = <X,Y>", r.j_isometry_residual);
  flag("G(X,X) = 0", r.g_diagonal_residual);
  flag("<G(X,Y),Z> alternating", r.g_alternating_residual);
  return r;
}

}  // namespace nks6
