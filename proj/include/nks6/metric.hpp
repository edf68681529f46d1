#pragma once

// Intrinsic Riemannian quantities of a chart metric given as jets: inverse,
// Christoffel symbols, the (0,4) curvature tensor and the Gaussian curvature
// of a surface metric.

#include <array>
#include <cmath>
#include <cstddef>

#include "nks6/jet.hpp"

namespace nks6 {

inline constexpr int kMaxDim = 3;

template <class T>
using Tensor2 = std::array<std::array<T, kMaxDim>, kMaxDim>;
template <class T>
using Tensor3 = std::array<Tensor2<T>, kMaxDim>;
template <class T>
using Tensor4 = std::array<Tensor3<T>, kMaxDim>;

using Mat3 = Tensor2<double>;

inline std::size_t at(int i) { return static_cast<std::size_t>(i); }

inline Jet determinant(const Tensor2<Jet>& g, int dim) {
  if (dim == 1) return g[0][0];
  if (dim == 2) return g[0][0] * g[1][1] - g[0][1] * g[1][0];
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

// Inverse by the adjugate formula; exact in jet arithmetic.
inline Tensor2<Jet> inverse(const Tensor2<Jet>& g, int dim) {
  const Jet inv_det = reciprocal(determinant(g, dim));
  Tensor2<Jet> r;
  if (dim == 1) {
    r[0][0] = inv_det;
  } else if (dim == 2) {
    r[0][0] = g[1][1] * inv_det;
    r[1][1] = g[0][0] * inv_det;
    r[0][1] = -(g[0][1] * inv_det);
    r[1][0] = -(g[1][0] * inv_det);
  } else {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
        const int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
        r[at(i)][at(j)] = (g[at(i1)][at(j1)] * g[at(i2)][at(j2)] - g[at(i1)][at(j2)] * g[at(i2)][at(j1)]) * inv_det;
      }
  }
  return r;
}

// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij), indexed [k][i][j].
// The result has one order less than the metric.
inline Tensor3<Jet> christoffel(const Tensor2<Jet>& g, const Tensor2<Jet>& ginv, int dim) {
  Tensor3<Jet> dg;  // dg[l][i][j] = d_l g_ij
  for (int l = 0; l < dim; ++l)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) dg[at(l)][at(i)][at(j)] = g[at(i)][at(j)].derivative(l);
  Tensor3<Jet> gamma;
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        Jet s = zero_like(dg[0][0][0]);
        for (int l = 0; l < dim; ++l)
          s += ginv[at(k)][at(l)] * (dg[at(i)][at(j)][at(l)] + dg[at(j)][at(i)][at(l)] - dg[at(l)][at(i)][at(j)]);
        s *= 0.5;
        gamma[at(k)][at(i)][at(j)] = s;
        gamma[at(k)][at(j)][at(i)] = s;
      }
  return gamma;
}

// R[i][j][k][l] = <R(d_i, d_j) d_k, d_l> with
// R(X,Y)Z = D_X D_Y Z - D_Y D_X Z - D_[X,Y] Z, evaluated at the jet point.
// Needs Christoffel jets of order >= 1.
inline Tensor4<double> riemann_lowered(const Tensor2<Jet>& g, const Tensor3<Jet>& gamma, int dim) {
  Tensor4<double> r{};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        std::array<double, kMaxDim> up{};  // R(d_i, d_j) d_k in the coordinate basis
        for (int l = 0; l < dim; ++l) {
          double v = gamma[at(l)][at(j)][at(k)].derivative(i).value() - gamma[at(l)][at(i)][at(k)].derivative(j).value();
          for (int m = 0; m < dim; ++m)
            v += gamma[at(m)][at(j)][at(k)].value() * gamma[at(l)][at(i)][at(m)].value() -
                 gamma[at(m)][at(i)][at(k)].value() * gamma[at(l)][at(j)][at(m)].value();
          up[at(l)] = v;
        }
        for (int l = 0; l < dim; ++l) {
          double v = 0.0;
          for (int p = 0; p < dim; ++p) v += g[at(l)][at(p)].value() * up[at(p)];
          r[at(i)][at(j)][at(k)][at(l)] = v;
        }
      }
  return r;
}

// Curvature of a chart metric from its jets (order >= 2).
inline Tensor4<double> intrinsic_curvature(const Tensor2<Jet>& g, int dim) {
  const Tensor2<Jet> ginv = inverse(g, dim);
  return riemann_lowered(g, christoffel(g, ginv, dim), dim);
}

// Brioschi's formula for the Gaussian curvature of E du^2 + 2F du dv + G dv^2.
// Metric jets must be of order >= 2 in two variables.
inline double gaussian_curvature_brioschi(const Jet& E, const Jet& F, const Jet& G) {
  const double e = E.value(), f = F.value(), g = G.value();
  const double Eu = E.partial({1, 0, 0}), Ev = E.partial({0, 1, 0});
  const double Fu = F.partial({1, 0, 0}), Fv = F.partial({0, 1, 0});
  const double Gu = G.partial({1, 0, 0}), Gv = G.partial({0, 1, 0});
  const double Evv = E.partial({0, 2, 0}), Fuv = F.partial({1, 1, 0}), Guu = G.partial({2, 0, 0});
  auto det3 = [](double a, double b, double c, double d, double ee, double ff, double gg, double h, double i) {
    return a * (ee * i - ff * h) - b * (d * i - ff * gg) + c * (d * h - ee * gg);
  };
  const double first = det3(-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,  //
                            Fv - 0.5 * Gu, e, f,                                //
                            0.5 * Gv, f, g);
  const double second = det3(0.0, 0.5 * Ev, 0.5 * Gu,  //
                             0.5 * Ev, e, f,           //
                             0.5 * Gu, f, g);
  const double w = e * g - f * f;
  return (first - second) / (w * w);
}

}  // namespace nks6
