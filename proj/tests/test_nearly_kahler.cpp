#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "nks6/nearly_kahler.hpp"

using namespace nks6;
using Catch::Matchers::WithinAbs;

namespace {

Vector7 tangential(const Vector7& p, const Vector7& v) { return v - dot(v, p) * p; }

// (D_X J) Y by central differences along the great circle through p with
// velocity X, with Y extended by projecting the constant vector.
Vector7 g_finite_difference(const Vector7& p, const Vector7& x, const Vector7& y, double h = 1e-5) {
  const double s = norm(x);
  auto gamma = [&](double t) { return std::cos(s * t) * p + std::sin(s * t) * (x * (1.0 / s)); };
  auto y_ext = [&](double t) { return tangential(gamma(t), y); };
  auto jy = [&](double t) { return cross(gamma(t), y_ext(t)); };
  const Vector7 d_jy = (jy(h) - jy(-h)) * (1.0 / (2 * h));
  const Vector7 d_y = (y_ext(h) - y_ext(-h)) * (1.0 / (2 * h));
  return tangential(p, d_jy) - cross(p, tangential(p, d_y));
}

}  // namespace

TEST_CASE("J on basis vectors at e1") {
  const PointS6 p(basis(1));
  CHECK(almost_complex(p, TangentVectorS6(p, basis(2))).direction() == basis(3));
  CHECK(almost_complex(p, TangentVectorS6(p, basis(3))).direction() == -basis(2));
}

TEST_CASE("tangent projection") {
  const Vector7 pos = (basis(1) + basis(2)) * (1.0 / std::sqrt(2.0));
  const PointS6 p(pos);
  const auto v = project_tangent(p, basis(1));
  const Vector7 expected = basis(1) - (1.0 / std::sqrt(2.0)) * pos;
  CHECK(max_abs(v.direction() - expected) <= 1e-15);
  CHECK_THAT(dot(v.direction(), pos), WithinAbs(0.0, 1e-15));
}

TEST_CASE("G agrees with a finite-difference oracle") {
  const PointS6 p(basis(1));
  const TangentVectorS6 x(p, basis(2)), y(p, basis(4));
  const Vector7 g = g_tensor(p, x, y);
  CHECK(max_abs(g - g_finite_difference(basis(1), basis(2), basis(4))) <= 1e-8);
  CHECK(max_abs(g - basis(6)) <= 1e-14);

  std::mt19937_64 rng(21);
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const PointS6 q = random_point(rng);
    const auto a = random_tangent(q, rng), b = random_tangent(q, rng);
    const Vector7 fd = g_finite_difference(q.position(), a.direction(), b.direction());
    worst = std::max(worst, max_abs(g_tensor(q, a, b) - fd) / (norm(a.direction()) * norm(b.direction())));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("G is the tangential part of the cross product") {
  // Along the great circle the extension satisfies Y' = -<X,Y> p, so only the gamma' x Y term survives.
  std::mt19937_64 rng(4);
  for (int s = 0; s < 200; ++s) {
    const PointS6 q = random_point(rng);
    const auto a = random_tangent(q, rng), b = random_tangent(q, rng);
    const Vector7 closed = tangential(q.position(), cross(a.direction(), b.direction()));
    CHECK(max_abs(g_tensor(q, a, b) - closed) <= 1e-13);
  }
}

TEST_CASE("G(X,Y) is orthogonal to p, X, Y, JX and JY") {
  std::mt19937_64 rng(8);
  for (int s = 0; s < 200; ++s) {
    const PointS6 q = random_point(rng);
    const auto a = random_tangent(q, rng), b = random_tangent(q, rng);
    const Vector7 g = g_tensor(q, a, b);
    const double scale = norm(a.direction()) * norm(b.direction());
    const Vector7 ja = almost_complex(q, a).direction(), jb = almost_complex(q, b).direction();
    for (const Vector7* v : {&q.position(), &a.direction(), &b.direction(), &ja, &jb})
      CHECK(std::abs(dot(g, *v)) <= 1e-13 * scale * (1 + norm(*v)));
  }
}

TEST_CASE("nearly Kaehler identities on random samples") {
  const auto r = verify_nearly_kahler(500, 3, 1e-12);
  CHECK(r.passed());
  CHECK(r.j_squared_residual <= 1e-14);
  CHECK(r.j_isometry_residual <= 1e-14);
  CHECK(r.g_diagonal_residual <= 1e-14);
  CHECK(r.g_alternating_residual <= 1e-13);
}

TEST_CASE("geometric preconditions are enforced") {
  CHECK_THROWS_AS(PointS6(basis(1) * 2.0), GeometryError);
  const PointS6 p(basis(1));
  CHECK_THROWS_AS(TangentVectorS6(p, basis(1)), GeometryError);
  const PointS6 q(basis(2));
  CHECK_THROWS_AS(almost_complex(q, TangentVectorS6(p, basis(3))), GeometryError);
  CHECK_THROWS_AS(verify_nearly_kahler(0), std::invalid_argument);
  CHECK(g_tensor(p, TangentVectorS6(p, Vector7{}), TangentVectorS6(p, basis(2))) == Vector7{});
}
