#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <random>

#include "nks6/jet.hpp"

using namespace nks6;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Jet t_jet(int order, double at = 0.0) { return Jet::variable(1, order, 0, at); }

// Random jet with the given shape and coefficients in [-1, 1].
Jet random_jet(std::mt19937_64& rng, int nvars, int order) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Jet j(nvars, order);
  for (int p = 0; p < j.size(); ++p) j.coefficient(p) = d(rng);
  return j;
}

}  // namespace

TEST_CASE("coefficient count is C(n + k, k)") {
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= 4; ++k) {
      int expected = 1;
      for (int i = 1; i <= n; ++i) expected = expected * (k + i) / i;
      CHECK(Jet(n, k).size() == expected);
    }
  CHECK(Jet(3, 4).size() == kMaxJetSize);
}

TEST_CASE("t times t is t squared") {
  const Jet t = t_jet(3);
  const Jet t2 = t * t;
  CHECK(t2.coefficient({2, 0, 0}) == 1.0);
  CHECK(t2.coefficient({1, 0, 0}) == 0.0);
  CHECK(extract_partial(t2, {2, 0, 0}) == 2.0);
}

TEST_CASE("sin(t) cos(t) matches the series of sin(2t)/2") {
  const Jet t = t_jet(3);
  const Jet p = sin(t) * cos(t);
  CHECK_THAT(p.coefficient({0, 0, 0}), WithinAbs(0.0, 1e-16));
  CHECK_THAT(p.coefficient({1, 0, 0}), WithinAbs(1.0, 1e-16));
  CHECK_THAT(p.coefficient({2, 0, 0}), WithinAbs(0.0, 1e-16));
  CHECK_THAT(p.coefficient({3, 0, 0}), WithinAbs(-2.0 / 3.0, 1e-15));
}

TEST_CASE("Maclaurin series of the primitives") {
  const Jet t = t_jet(4);
  const Jet s = sin(t);
  const double sin_coeffs[] = {0.0, 1.0, 0.0, -1.0 / 6.0, 0.0};
  for (int k = 0; k <= 4; ++k) CHECK_THAT(s.coefficient({k, 0, 0}), WithinAbs(sin_coeffs[k], 1e-16));
  CHECK(cos(Jet::constant(1, 4, 0.0)) == Jet::constant(1, 4, 1.0));
  CHECK_THAT(extract_partial(cos(t), {4, 0, 0}), WithinAbs(1.0, 1e-15));

  const Jet r = sqrt(t_jet(2) + 1.0);
  CHECK_THAT(r.coefficient({0, 0, 0}), WithinAbs(1.0, 1e-16));
  CHECK_THAT(r.coefficient({1, 0, 0}), WithinAbs(0.5, 1e-16));
  CHECK_THAT(r.coefficient({2, 0, 0}), WithinAbs(-0.125, 1e-16));

  const Jet e = exp(t);
  for (int k = 0; k <= 4; ++k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    CHECK_THAT(e.coefficient({k, 0, 0}), WithinRel(1.0 / f, 1e-15));
  }
  const Jet q = reciprocal(1.0 - t);  // geometric series
  for (int k = 0; k <= 4; ++k) CHECK_THAT(q.coefficient({k, 0, 0}), WithinAbs(1.0, 1e-15));
}

TEST_CASE("u v has mixed partial one") {
  const auto x = coordinate_jets({0.3, -0.7}, 2);
  const Jet uv = x[0] * x[1];
  CHECK_THAT(extract_partial(uv, {1, 1, 0}), WithinAbs(1.0, 1e-16));
  CHECK_THAT(extract_partial(uv, {1, 0, 0}), WithinAbs(-0.7, 1e-16));
  CHECK_THAT(extract_partial(uv, {0, 1, 0}), WithinAbs(0.3, 1e-16));
}

TEST_CASE("chain rule against analytic derivatives at a non-zero point") {
  const double a = 0.37;
  const Jet t = t_jet(4, a);
  // d^k/dt^k sin(t) and exp(2t)
  const Jet s = sin(t), e = exp(t * 2.0);
  const double ds[] = {std::sin(a), std::cos(a), -std::sin(a), -std::cos(a), std::sin(a)};
  for (int k = 0; k <= 4; ++k) {
    CHECK_THAT(extract_partial(s, {k, 0, 0}), WithinRel(ds[k], 1e-12));
    CHECK_THAT(extract_partial(e, {k, 0, 0}), WithinRel(std::pow(2.0, k) * std::exp(2 * a), 1e-12));
  }
  // 1/sqrt(1 + t^2): first derivative -t (1 + t^2)^(-3/2)
  const Jet w = reciprocal(sqrt(t * t + 1.0));
  CHECK_THAT(extract_partial(w, {1, 0, 0}), WithinRel(-a * std::pow(1 + a * a, -1.5), 1e-12));
  CHECK_THAT(extract_partial(w, {2, 0, 0}), WithinRel((2 * a * a - 1) * std::pow(1 + a * a, -2.5), 1e-12));
}

TEST_CASE("first and second partials agree with central differences on random expressions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const double h = 1e-5;
  double worst1 = 0.0, worst2 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = coef(rng), b = coef(rng), c = coef(rng);
    // f(u, v, w) = sin(a u + v w) exp(b v) / sqrt(2 + cos(c w + u))
    auto f = [&](auto u, auto v, auto w) { return sin(u * a + v * w) * exp(v * b) * reciprocal(sqrt(cos(w * c + u) + 2.0)); };
    auto fd = [&](double u, double v, double w) {
      return std::sin(a * u + v * w) * std::exp(b * v) / std::sqrt(2.0 + std::cos(c * w + u));
    };
    const std::vector<double> p{coef(rng), coef(rng), coef(rng)};
    const auto x = coordinate_jets(p, 2);
    const Jet j = f(x[0], x[1], x[2]);
    for (int i = 0; i < 3; ++i) {
      std::array<double, 3> e{};
      e[static_cast<std::size_t>(i)] = h;
      const double d1 = (fd(p[0] + e[0], p[1] + e[1], p[2] + e[2]) - fd(p[0] - e[0], p[1] - e[1], p[2] - e[2])) / (2 * h);
      MultiIndex mi{};
      mi[static_cast<std::size_t>(i)] = 1;
      worst1 = std::max(worst1, std::abs(j.partial(mi) - d1));
      // second derivatives along the axis with a wider step
      const double H = 1e-4;
      const double f0 = fd(p[0], p[1], p[2]);
      std::array<double, 3> E{};
      E[static_cast<std::size_t>(i)] = H;
      const double d2 = (fd(p[0] + E[0], p[1] + E[1], p[2] + E[2]) - 2 * f0 + fd(p[0] - E[0], p[1] - E[1], p[2] - E[2])) / (H * H);
      mi[static_cast<std::size_t>(i)] = 2;
      worst2 = std::max(worst2, std::abs(j.partial(mi) - d2));
    }
  }
  CHECK(worst1 <= 1e-7);
  CHECK(worst2 <= 1e-6);
}

TEST_CASE("multiplication is commutative and associative, and Leibniz holds") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Jet a = random_jet(rng, 3, 4), b = random_jet(rng, 3, 4), c = random_jet(rng, 3, 4);
    const Jet ab = a * b, ba = b * a;
    for (int p = 0; p < ab.size(); ++p) CHECK_THAT(ab.coefficient(p), WithinAbs(ba.coefficient(p), 1e-15));
    const Jet l = (a * b) * c, r = a * (b * c);
    for (int p = 0; p < l.size(); ++p) CHECK_THAT(l.coefficient(p), WithinAbs(r.coefficient(p), 1e-14));
    for (int v = 0; v < 3; ++v) {
      const Jet lhs = (a * b).derivative(v);
      const Jet rhs = a.derivative(v) * b + a * b.derivative(v);
      for (int p = 0; p < lhs.size(); ++p) CHECK_THAT(lhs.coefficient(p), WithinAbs(rhs.coefficient(p), 1e-14));
    }
  }
}

TEST_CASE("mixed orders truncate to the lower order") {
  const Jet a = Jet::variable(2, 4, 0, 0.5), b = Jet::variable(2, 2, 1, 0.0);
  const Jet s = a + b;
  CHECK(s.order() == 2);
  CHECK((a * b).order() == 2);
  CHECK((b * a).order() == 2);
}

TEST_CASE("invalid use is reported") {
  const Jet a(2, 2), b(3, 2);
  CHECK_THROWS_AS(a * b, JetError);
  CHECK_THROWS_AS(a + b, JetError);
  CHECK_THROWS_AS(Jet(4, 2), JetError);
  CHECK_THROWS_AS(Jet(1, 5), JetError);
  CHECK_THROWS_AS(extract_partial(Jet(1, 2), {3, 0, 0}), JetError);
  CHECK_THROWS_AS(extract_partial(Jet(1, 2), {0, 1, 0}), JetError);
  CHECK_THROWS_AS(sqrt(Jet::constant(1, 2, -1.0)), JetError);
  CHECK_THROWS_AS(reciprocal(Jet::constant(1, 2, 0.0)), JetError);
  CHECK_THROWS_AS(Jet::constant(1, 0, 1.0).derivative(0), JetError);
  CHECK_THROWS_AS(Jet(1, 2).truncated(3), JetError);
}

TEST_CASE("composition substitutes jets into a Taylor polynomial") {
  // outer: g(a, b) = sin(a) b expanded at (0.2, 1.5); inner: a = u^2 + 0.2, b = 1.5 + u v
  const auto ab = coordinate_jets({0.2, 1.5}, 4);
  const Jet outer = sin(ab[0]) * ab[1];
  const auto uv = coordinate_jets({0.4, -0.3}, 3);
  const Jet a = uv[0] * uv[0] + (0.2 - 0.16), b = uv[0] * uv[1] + (1.5 + 0.12);
  const Jet composed = compose(outer, {a, b});
  const Jet direct = sin(a) * b;
  REQUIRE(composed.order() == 3);
  for (int p = 0; p < composed.size(); ++p) CHECK_THAT(composed.coefficient(p), WithinAbs(direct.coefficient(p), 1e-13));
}
