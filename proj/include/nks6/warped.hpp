#pragma once

// Warped products I x_f N^2 with metric dt^2 + f(t)^2 g_N, and their
// curvature from the warped-product formulas next to the intrinsic curvature
// of the product chart.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nks6/immersion.hpp"
#include "nks6/metric.hpp"
#include "nks6/nearly_kahler.hpp"
#include "nks6/submanifold.hpp"

namespace nks6 {

// f(t) on jets.
using WarpingFunction = std::function<Jet(const Jet&)>;

// (E, F, G) of the fiber metric at fiber-coordinate jets (u, v).
using FiberMetric = std::function<std::array<Jet, 3>(const std::vector<Jet>&)>;

struct WarpedProduct {
  double t_lower = -1.0, t_upper = 1.0;
  ChartBox fiber_domain;
  WarpingFunction warping;
  FiberMetric fiber_metric;
  // Analytic K_N(u, v); Brioschi on fiber_metric is used when absent.
  std::optional<std::function<double(double, double)>> fiber_curvature;
  std::string label;

  ChartBox domain() const {
    ChartBox b;
    b.lower = {t_lower, fiber_domain.lower[0], fiber_domain.lower[1]};
    b.upper = {t_upper, fiber_domain.upper[0], fiber_domain.upper[1]};
    return b;
  }
};

// Value and first two derivatives of f at t.
struct WarpingJet {
  double f = 0.0, df = 0.0, ddf = 0.0;
};

inline WarpingJet warping_at(const WarpedProduct& wp, double t) {
  const Jet j = wp.warping(Jet::variable(1, 2, 0, t));
  WarpingJet w{j.value(), j.partial({1, 0, 0}), j.partial({2, 0, 0})};
  if (!(w.f > 0.0)) throw GeometryError("warping function is not positive at t = " + std::to_string(t));
  return w;
}

// Metric jets of dt^2 + f^2 g_N in coordinates (t, u, v).
inline Tensor2<Jet> warped_metric_jets(const WarpedProduct& wp, const std::vector<double>& point, int order) {
  if (point.size() != 3) throw std::invalid_argument("warped product points are (t, u, v)");
  const auto x = coordinate_jets(point, order);
  const Jet f = wp.warping(x[0]);
  if (!(f.value() > 0.0)) throw GeometryError("warping function is not positive at t = " + std::to_string(point[0]));
  const auto [e, ff, g] = wp.fiber_metric({x[1], x[2]});
  const Jet f2 = f * f;
  Tensor2<Jet> m;
  const Jet zero = zero_like(f);
  m[0][0] = zero + 1.0;
  m[0][1] = m[1][0] = zero;
  m[0][2] = m[2][0] = zero;
  m[1][1] = f2 * e;
  m[1][2] = m[2][1] = f2 * ff;
  m[2][2] = f2 * g;
  return m;
}

inline Mat3 warped_metric(const WarpedProduct& wp, const std::vector<double>& point) {
  const auto m = warped_metric_jets(wp, point, 0);
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[at(i)][at(j)] = m[at(i)][at(j)].value();
  return r;
}

inline double fiber_gaussian_curvature(const WarpedProduct& wp, double u, double v) {
  if (wp.fiber_curvature) return (*wp.fiber_curvature)(u, v);
  const auto x = coordinate_jets({u, v}, 2);
  const auto [e, f, g] = wp.fiber_metric(x);
  return gaussian_curvature_brioschi(e, f, g);
}

// K_N - f'^2 + f f''.  Zero exactly when the planes containing d/dt and the
// fiber planes have the same curvature -f''/f.
inline double dichotomy_scalar(const WarpedProduct& wp, const std::vector<double>& point) {
  const WarpingJet w = warping_at(wp, point[0]);
  return fiber_gaussian_curvature(wp, point[1], point[2]) - w.df * w.df + w.f * w.ddf;
}

struct WarpedCurvature {
  Tensor4<double> riemann{};  // <R(d_i, d_j) d_k, d_l>
};

// Curvature of B x_f F from the warped-product formulas, with B = (I, dt^2)
// and F = (N, g_N):
//   R(X,Y)Z = lift of the base curvature,
//   R(X,V)Y = (H^f(X,Y)/f) V,
//   R(X,Y)V = R(V,W)X = 0,
//   R(X,V)W = -(<V,W>/f) D_X grad f,
//   R(V,W)U = F-curvature + (|grad f|^2/f^2)(<V,U>W - <W,U>V).
// X, Y, Z horizontal; U, V, W vertical; <,> the warped metric.
inline WarpedCurvature warped_curvature_formulas(const WarpedProduct& wp, const std::vector<double>& point) {
  const WarpingJet w = warping_at(wp, point[0]);
  const double kn = fiber_gaussian_curvature(wp, point[1], point[2]);
  const Mat3 g = warped_metric(wp, point);
  // Fiber metric g_N in fiber indices 1, 2.
  auto gn = [&](int a, int b) { return g[at(a)][at(b)] / (w.f * w.f); };
  // The base is an interval with dt^2: no base curvature, Hessian f'', grad f = f' d/dt.
  const double hess = w.ddf;
  const double grad2 = w.df * w.df;
  auto is_base = [](int i) { return i == 0; };

  WarpedCurvature out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        std::array<double, 3> r{};  // R(d_i, d_j) d_k
        const bool bi = is_base(i), bj = is_base(j), bk = is_base(k);
        if (bi && bj && bk) {
          // base curvature of a line vanishes
        } else if (bi && !bj && bk) {
          r[at(j)] = hess / w.f;
        } else if (!bi && bj && bk) {
          r[at(i)] = -hess / w.f;
        } else if (bi && bj && !bk) {
          // R(X,Y)V = 0
        } else if (!bi && !bj && bk) {
          // R(V,W)X = 0
        } else if (bi && !bj && !bk) {
          r[0] = -g[at(j)][at(k)] / w.f * hess;
        } else if (!bi && bj && !bk) {
          r[0] = g[at(i)][at(k)] / w.f * hess;
        } else {
          // F-curvature K_N (g_N(W,U) V - g_N(V,U) W) plus the warping term.
          r[at(i)] += kn * gn(j, k);
          r[at(j)] -= kn * gn(i, k);
          r[at(j)] += grad2 / (w.f * w.f) * g[at(i)][at(k)];
          r[at(i)] -= grad2 / (w.f * w.f) * g[at(j)][at(k)];
        }
        for (int l = 0; l < 3; ++l) {
          double v = 0.0;
          for (int p = 0; p < 3; ++p) v += r[at(p)] * g[at(p)][at(l)];
          out.riemann[at(i)][at(j)][at(k)][at(l)] = v;
        }
      }
  return out;
}

struct WarpedComparison {
  double residual = 0.0;  // max component difference, formulas vs intrinsic
  double mixed_zero = 0.0;  // max |<R(V,W)X, .>| of the intrinsic tensor
  std::vector<double> worst_point, mixed_worst_point;
};

// Compares the formulas against the curvature of the chart metric computed
// from its jets, at every point.
inline WarpedComparison curvature_oracle_compare(const WarpedProduct& wp, const std::vector<std::vector<double>>& points) {
  WarpedComparison c;
  for (const auto& p : points) {
    const auto formula = warped_curvature_formulas(wp, p).riemann;
    const auto intrinsic = intrinsic_curvature(warped_metric_jets(wp, p, 2), 3);
    double worst = 0.0, mixed = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            const double v = intrinsic[at(i)][at(j)][at(k)][at(l)];
            worst = std::max(worst, std::abs(formula[at(i)][at(j)][at(k)][at(l)] - v));
            // R(X,Y)V vanishes by antisymmetry on a line; R(V,W)X is the real check.
            if (i != 0 && j != 0 && k == 0) mixed = std::max(mixed, std::abs(v));
          }
    if (c.mixed_worst_point.empty() || mixed > c.mixed_zero) {
      c.mixed_zero = mixed;
      c.mixed_worst_point = p;
    }
    if (c.worst_point.empty() || worst > c.residual) {
      c.residual = worst;
      c.worst_point = p;
    }
  }
  return c;
}

// Sectional curvatures of the coordinate planes through d/dt and of the fiber
// plane, from the formulas.
struct WarpedSectional {
  double radial = 0.0;  // K(d_t ^ V) = -f''/f
  double fiber = 0.0;   // (K_N - f'^2)/f^2
};

inline WarpedSectional warped_sectional(const WarpedProduct& wp, const std::vector<double>& point) {
  const WarpingJet w = warping_at(wp, point[0]);
  const double kn = fiber_gaussian_curvature(wp, point[1], point[2]);
  return {-w.ddf / w.f, (kn - w.df * w.df) / (w.f * w.f)};
}

// dt^2 + cos^2 t g_N with the induced metric of a surface in S^5 as g_N, the
// metric of the rotation immersion sin t n + cos t x(u, v).
inline WarpedProduct rotation_warped_product(const Immersion& surface, double t_margin = 0.1) {
  if (surface.dim != 2) throw std::invalid_argument("rotation_warped_product needs a surface");
  WarpedProduct wp;
  wp.t_lower = -std::numbers::pi / 2 + t_margin;
  wp.t_upper = std::numbers::pi / 2 - t_margin;
  wp.fiber_domain = surface.domain;
  wp.label = "rotation:" + surface.label;
  wp.warping = [](const Jet& t) { return cos(t); };
  wp.fiber_metric = [surface](const std::vector<Jet>& uv) {
    // Metric jets in the surface's own chart at the base point, then substituted.
    const int order = std::min(uv[0].order(), kMaxJetOrder - 1);
    const auto x = surface.evaluate({uv[0].value(), uv[1].value()}, order + 1);
    const auto xu = detail::derivative(x, 0), xv = detail::derivative(x, 1);
    std::array<Jet, 3> m{dot(xu, xu), dot(xu, xv), dot(xv, xv)};
    for (auto& c : m) c = compose(c, uv);
    return m;
  };
  return wp;
}

// Random warped product: cubic f > 0.2 on [-1, 1] and a polynomial fiber
// metric with EG - F^2 > 0.1 on [-1, 1]^2, both by rejection.
inline WarpedProduct random_warped_product(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::array<double, 4> c{};
  for (;;) {
    for (auto& x : c) x = coef(rng);
    c[0] = 1.0 + std::abs(c[0]);
    bool ok = true;
    for (int k = 0; k <= 40 && ok; ++k) {
      const double t = -1.0 + k / 20.0;
      ok = c[0] + t * (c[1] + t * (c[2] + t * c[3])) > 0.2;
    }
    if (ok) break;
  }
  std::array<double, 5> m{};
  for (;;) {
    for (auto& x : m) x = coef(rng);
    bool ok = true;
    for (int a = 0; a <= 20 && ok; ++a)
      for (int b = 0; b <= 20 && ok; ++b) {
        const double u = -1.0 + a / 10.0, v = -1.0 + b / 10.0;
        const double e = 1.0 + 0.3 * std::pow(m[0] * u + m[1] * v, 2);
        const double g = 1.0 + 0.3 * std::pow(m[2] * u * u + m[3] * v, 2);
        const double f = 0.2 * m[4] * u * v;
        ok = e * g - f * f > 0.1;
      }
    if (ok) break;
  }
  WarpedProduct wp;
  wp.t_lower = -1.0;
  wp.t_upper = 1.0;
  wp.fiber_domain = ChartBox{{-1.0, -1.0}, {1.0, 1.0}};
  wp.label = "random";
  wp.warping = [c](const Jet& t) { return ((t * c[3] + c[2]) * t + c[1]) * t + c[0]; };
  wp.fiber_metric = [m](const std::vector<Jet>& uv) {
    const Jet& u = uv[0];
    const Jet& v = uv[1];
    const Jet p = u * m[0] + v * m[1];
    const Jet q = u * u * m[2] + v * m[3];
    return std::array<Jet, 3>{p * p * 0.3 + 1.0, u * v * (0.2 * m[4]), q * q * 0.3 + 1.0};
  };
  return wp;
}

}  // namespace nks6
