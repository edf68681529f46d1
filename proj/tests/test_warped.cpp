#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "nks6/constructions.hpp"
#include "nks6/warped.hpp"

using namespace nks6;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::vector<double>> random_points(const ChartBox& box, int count, std::mt19937_64& rng) {
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < count; ++k) {
    std::vector<double> p(3);
    for (std::size_t i = 0; i < 3; ++i) {
      const double w = box.upper[i] - box.lower[i];
      p[i] = std::uniform_real_distribution<double>(box.lower[i] + 0.05 * w, box.upper[i] - 0.05 * w)(rng);
    }
    pts.push_back(p);
  }
  return pts;
}

double max_diff(const Tensor4<double>& a, const Tensor4<double>& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) m = std::max(m, std::abs(a[at(i)][at(j)][at(k)][at(l)] - b[at(i)][at(j)][at(k)][at(l)]));
  return m;
}

}  // namespace

TEST_CASE("curvature formulas match the intrinsic tensor on random warped products") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const WarpedProduct wp = random_warped_product(rng);
    const auto pts = random_points(wp.domain(), 5, rng);
    const auto cmp = curvature_oracle_compare(wp, pts);
    CHECK(cmp.residual <= 1e-9);
    CHECK(cmp.mixed_zero <= 1e-10);
    for (const auto& p : pts) {
      const auto r = intrinsic_curvature(warped_metric_jets(wp, p, 2), 3);
      const Mat3 g = warped_metric(wp, p);
      const auto s = warped_sectional(wp, p);
      // K(d_t, d_u) from the tensor
      CHECK_THAT(r[0][1][1][0] / g[1][1], WithinAbs(s.radial, 1e-9));
      const double det = g[1][1] * g[2][2] - g[1][2] * g[1][2];
      CHECK_THAT(r[1][2][2][1] / det, WithinAbs(s.fiber, 1e-9));
      // the Brioschi fiber curvature rescales with f^2
      const auto x = coordinate_jets({p[1], p[2]}, 2);
      const auto [e, f, gg] = wp.fiber_metric(x);
      CHECK_THAT(fiber_gaussian_curvature(wp, p[1], p[2]), WithinAbs(gaussian_curvature_brioschi(e, f, gg), 1e-14));
    }
  }
}

TEST_CASE("rotation product metric is the induced metric of the rotation immersion") {
  for (const char* id : {"great-s2", "lagrangian-torus", "perturbed", "small-s2"}) {
    const auto entry = find_catalog_entry(id);
    const WarpedProduct wp = rotation_warped_product(entry.immersion);
    const Immersion imm = rotation_immersion(*entry.surface);
    for (const auto& p : sample_grid(imm.domain, {3, 3, 3})) {
      const auto pkg = curvature_data(imm, p, 3);
      const Mat3 g = warped_metric(wp, p);
      INFO(id);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK_THAT(g[at(i)][at(j)], WithinAbs(pkg.metric[at(i)][at(j)], 1e-12));
      CHECK(max_diff(warped_curvature_formulas(wp, p).riemann, pkg.riemann) <= 1e-8);
    }
  }
}

TEST_CASE("dichotomy scalar for round and flat fibers") {
  const WarpedProduct round = rotation_warped_product(find_catalog_entry("great-s2").immersion);
  const WarpedProduct flat = rotation_warped_product(find_catalog_entry("lagrangian-torus").immersion);
  for (double t : {-1.2, 0.0, 0.7, std::numbers::pi / 2 - 0.11}) {
    CHECK_THAT(dichotomy_scalar(round, {t, 1.0, 0.5}), WithinAbs(0.0, 1e-12));
    CHECK_THAT(dichotomy_scalar(flat, {t, 1.0, 2.0}), WithinAbs(-1.0, 1e-12));
    // round fiber: every sectional curvature is 1
    const auto s = warped_sectional(round, {t, 1.0, 0.5});
    CHECK_THAT(s.radial, WithinAbs(1.0, 1e-12));
    CHECK_THAT(s.fiber, WithinAbs(1.0, 1e-10));
  }
}

TEST_CASE("analytic fiber curvature overrides Brioschi") {
  WarpedProduct wp = rotation_warped_product(find_catalog_entry("great-s2").immersion);
  wp.fiber_curvature = [](double, double) { return 1.0; };
  CHECK(fiber_gaussian_curvature(wp, 1.0, 0.3) == 1.0);
  CHECK(curvature_oracle_compare(wp, {{0.3, 1.0, 0.3}}).residual <= 1e-9);
}

TEST_CASE("warping must stay positive") {
  const WarpedProduct wp = rotation_warped_product(find_catalog_entry("great-s2").immersion);
  CHECK(warping_at(wp, std::numbers::pi / 2 - 0.1).f > 0.0);
  CHECK_THROWS_AS(warping_at(wp, std::numbers::pi / 2 + 0.1), GeometryError);
  CHECK_THROWS_AS(warped_metric_jets(wp, {std::numbers::pi, 1.0, 0.5}, 2), GeometryError);
  CHECK_THROWS_AS(warped_metric_jets(wp, {0.0, 1.0}, 2), std::invalid_argument);
  CHECK_THROWS_AS(rotation_warped_product(find_catalog_entry("tg-s3").immersion), std::invalid_argument);
}
