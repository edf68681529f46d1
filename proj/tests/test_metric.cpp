#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "nks6/metric.hpp"

using namespace nks6;
using Catch::Matchers::WithinAbs;

namespace {

Tensor2<Jet> diagonal_metric(const std::vector<Jet>& entries) {
  const int d = static_cast<int>(entries.size());
  Tensor2<Jet> g;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g[at(i)][at(j)] = i == j ? entries[at(i)] : zero_like(entries[0]);
  return g;
}

}  // namespace

TEST_CASE("round three-sphere in hyperspherical coordinates has unit sectional curvature") {
  // g = da^2 + sin^2 a db^2 + sin^2 a sin^2 b dc^2
  const auto x = coordinate_jets({0.9, 1.2, 0.4}, 2);
  const Jet sa = sin(x[0]), sb = sin(x[1]);
  const auto g = diagonal_metric({Jet::constant(3, 2, 1.0), sa * sa, sa * sa * sb * sb});
  const auto r = intrinsic_curvature(g, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double gii = g[at(i)][at(i)].value(), gjj = g[at(j)][at(j)].value();
      // K(d_i, d_j) = R(d_i, d_j, d_j, d_i) / (g_ii g_jj)
      CHECK_THAT(r[at(i)][at(j)][at(j)][at(i)] / (gii * gjj), WithinAbs(1.0, 1e-12));
      CHECK_THAT(r[at(i)][at(j)][at(i)][at(j)] / (gii * gjj), WithinAbs(-1.0, 1e-12));
    }
  // Constant curvature one: R_ijkl = g_jk g_il - g_ik g_jl.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const double e = g[at(j)][at(k)].value() * g[at(i)][at(l)].value() -
                           g[at(i)][at(k)].value() * g[at(j)][at(l)].value();
          CHECK_THAT(r[at(i)][at(j)][at(k)][at(l)], WithinAbs(e, 1e-12));
        }
}

TEST_CASE("hyperbolic half plane has curvature minus one") {
  const auto x = coordinate_jets({0.3, 0.7}, 2);
  const Jet e = reciprocal(x[1] * x[1]);
  CHECK_THAT(gaussian_curvature_brioschi(e, zero_like(e), e), WithinAbs(-1.0, 1e-12));
  const auto r = intrinsic_curvature(diagonal_metric({e, e}), 2);
  const double w = e.value() * e.value();
  CHECK_THAT(r[0][1][1][0] / w, WithinAbs(-1.0, 1e-12));
}

TEST_CASE("polar coordinates on the plane are flat") {
  const auto x = coordinate_jets({1.3, 0.2}, 2);
  const Jet one = Jet::constant(2, 2, 1.0);
  CHECK_THAT(gaussian_curvature_brioschi(one, zero_like(one), x[0] * x[0]), WithinAbs(0.0, 1e-14));
  const auto r = intrinsic_curvature(diagonal_metric({one, x[0] * x[0]}), 2);
  for (const auto& a : r)
    for (const auto& b : a)
      for (const auto& c : b)
        for (double v : c) CHECK_THAT(v, WithinAbs(0.0, 1e-14));
}

TEST_CASE("Brioschi agrees with the intrinsic tensor on non-orthogonal metrics") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-0.4, 0.4);
  for (int t = 0; t < 50; ++t) {
    const double a = d(rng), b = d(rng), c = d(rng);
    const auto x = coordinate_jets({d(rng), d(rng)}, 2);
    const Jet E = 1.0 + a * x[0] * x[1] + 0.5 * sin(x[1]) * sin(x[1]);
    const Jet F = b * x[0] * x[0] + 0.1 * x[1];
    const Jet G = 1.5 + c * cos(x[0] + x[1]);
    Tensor2<Jet> g;
    g[0][0] = E;
    g[0][1] = g[1][0] = F;
    g[1][1] = G;
    const auto r = intrinsic_curvature(g, 2);
    const double det = E.value() * G.value() - F.value() * F.value();
    REQUIRE(det > 0.0);
    CHECK_THAT(r[0][1][1][0] / det, WithinAbs(gaussian_curvature_brioschi(E, F, G), 1e-11));
  }
}

TEST_CASE("inverse times metric is the identity") {
  const auto x = coordinate_jets({0.2, -0.1, 0.5}, 3);
  Tensor2<Jet> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[at(i)][at(j)] = (i == j ? 2.0 : 0.3) + 0.1 * x[at(i)] * x[at(j)];
  const auto inv = inverse(g, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Jet s = zero_like(x[0]);
      for (int k = 0; k < 3; ++k) s += g[at(i)][at(k)] * inv[at(k)][at(j)];
      for (int p = 0; p < s.size(); ++p) CHECK_THAT(s.coefficient(p), WithinAbs(i == j && p == 0 ? 1.0 : 0.0, 1e-14));
    }
}
