#pragma once

// Purely imaginary Cayley numbers: the 7-dimensional cross product and the
// Cayley product x.y = <x,y> e0 + x*y built from a signed multiplication table.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>

namespace nks6 {

// Coefficients of e1..e7.  T is double for points and vectors, or Jet when a
// vector field is being differentiated.
template <class T>
struct Vec7 {
  std::array<T, 7> c{};

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  Vec7& operator+=(const Vec7& o) {
    for (std::size_t i = 0; i < 7; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec7& operator-=(const Vec7& o) {
    for (std::size_t i = 0; i < 7; ++i) c[i] -= o.c[i];
    return *this;
  }
  template <class S>
  Vec7& operator*=(const S& s) {
    for (std::size_t i = 0; i < 7; ++i) c[i] *= s;
    return *this;
  }

  friend Vec7 operator+(Vec7 a, const Vec7& b) { return a += b; }
  friend Vec7 operator-(Vec7 a, const Vec7& b) { return a -= b; }
  friend Vec7 operator-(Vec7 a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  template <class S>
  friend Vec7 operator*(Vec7 a, const S& s) {
    return a *= s;
  }
  template <class S>
  friend Vec7 operator*(const S& s, Vec7 a) {
    return a *= s;
  }
  friend bool operator==(const Vec7&, const Vec7&) = default;
};

using Vector7 = Vec7<double>;

// Unit basis vector e_k, k = 1..7.
inline Vector7 basis(int k) {
  Vector7 v;
  v[static_cast<std::size_t>(k - 1)] = 1.0;
  return v;
}

// A zero carrying the shape (jet variables and order) of `t`.
template <class T>
T zero_like(const T& t) {
  return t * 0.0;
}

template <class T>
T dot(const Vec7<T>& a, const Vec7<T>& b) {
  T s = a[0] * b[0];
  for (std::size_t i = 1; i < 7; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vector7& a) { return std::sqrt(dot(a, a)); }

inline Vector7 normalized(const Vector7& a) { return a * (1.0 / norm(a)); }

inline double max_abs(const Vector7& a) {
  double m = 0.0;
  for (double x : a.c) m = std::max(m, std::abs(x));
  return m;
}

namespace detail {

// e_j x e_k = sign * e_index (1-based, 0 on the diagonal), row j, column k.
inline constexpr std::array<std::array<int, 7>, 7> kCrossTable{{
    {0, 3, -2, 5, -4, 7, -6},
    {-3, 0, 1, 6, -7, -4, 5},
    {2, -1, 0, -7, -6, 5, 4},
    {-5, -6, 7, 0, 1, 2, -3},
    {4, 7, 6, -1, 0, -3, -2},
    {-7, 4, -5, -2, 3, 0, 1},
    {6, -5, -4, 3, 2, -1, 0},
}};

struct SignedIndex {
  int index = -1;  // 0-based, -1 for zero
  int sign = 0;
};

inline const std::array<std::array<SignedIndex, 7>, 7>& cross_lookup() {
  static const auto table = [] {
    std::array<std::array<SignedIndex, 7>, 7> t{};
    for (std::size_t j = 0; j < 7; ++j)
      for (std::size_t k = 0; k < 7; ++k) {
        const int e = kCrossTable[j][k];
        if (e != 0) t[j][k] = {std::abs(e) - 1, e > 0 ? 1 : -1};
      }
    return t;
  }();
  return table;
}

}  // namespace detail

// Signed basis product e_j x e_k (1-based indices); {0, 0} on the diagonal.
inline std::pair<int, int> basis_cross(int j, int k) {
  const auto& e = detail::cross_lookup()[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
  return {e.index + 1, e.sign};
}

template <class T>
Vec7<T> cross(const Vec7<T>& x, const Vec7<T>& y) {
  const auto& table = detail::cross_lookup();
  Vec7<T> r;
  for (std::size_t i = 0; i < 7; ++i) r[i] = zero_like(x[0] * y[0]);
  for (std::size_t j = 0; j < 7; ++j)
    for (std::size_t k = 0; k < 7; ++k) {
      const auto& e = table[j][k];
      if (e.sign == 0) continue;
      if (e.sign > 0)
        r[static_cast<std::size_t>(e.index)] += x[j] * y[k];
      else
        r[static_cast<std::size_t>(e.index)] -= x[j] * y[k];
    }
  return r;
}

// Sign used for the real part of the Cayley product of two imaginary units.
// The toolkit's default follows x.y = <x,y> e0 + x*y; the octonion-standard
// choice is <x,y> -> -<x,y>.
enum class RealPartConvention { kPositiveInner, kNegativeInner };

struct CayleyNumber {
  double real_part = 0.0;
  Vector7 imaginary_part;
};

inline CayleyNumber cayley_mul(const Vector7& x, const Vector7& y,
                               RealPartConvention convention = RealPartConvention::kPositiveInner) {
  const double inner = dot(x, y);
  return {convention == RealPartConvention::kPositiveInner ? inner : -inner, cross(x, y)};
}

struct AlgebraFailure {
  std::string identity;
  Vector7 x, y;
  double residual = 0.0;
};

struct AlgebraReport {
  int basis_pairs_checked = 0;
  int random_pairs_checked = 0;
  double antisymmetry_residual = 0.0;   // |x*y + y*x|, relative to |x||y|
  double orthogonality_residual = 0.0;  // max(|<x*y,x>|, |<x*y,y>|), relative to |x|^2|y|
  double norm_residual = 0.0;           // ||x*y|^2 + <x,y>^2 - |x|^2|y|^2|, relative to |x|^2|y|^2
  double tolerance = 0.0;
  std::optional<AlgebraFailure> first_failure;

  bool passed() const { return !first_failure.has_value(); }
  double max_residual() const {
    return std::max({antisymmetry_residual, orthogonality_residual, norm_residual});
  }
};

// Checks the cross-product identities exactly on the 49 basis pairs and to
// `tolerance` (relative) on `trials` seeded random pairs.
inline AlgebraReport verify_algebra(int trials, std::uint64_t seed = 1, double tolerance = 1e-12) {
  AlgebraReport report;
  report.tolerance = tolerance;

  auto check = [&](const Vector7& x, const Vector7& y, bool exact) {
    const Vector7 z = cross(x, y);
    const double nx = norm(x), ny = norm(y);
    const double scale = nx * ny > 0 ? nx * ny : 1.0;
    const double anti = max_abs(z + cross(y, x)) / scale;
    const double orth = std::max(std::abs(dot(z, x)) / (scale * (nx > 0 ? nx : 1.0)),
                                 std::abs(dot(z, y)) / (scale * (ny > 0 ? ny : 1.0)));
    const double nrm = std::abs(dot(z, z) + dot(x, y) * dot(x, y) - dot(x, x) * dot(y, y)) / (scale * scale);
    report.antisymmetry_residual = std::max(report.antisymmetry_residual, anti);
    report.orthogonality_residual = std::max(report.orthogonality_residual, orth);
    report.norm_residual = std::max(report.norm_residual, nrm);
    const double tol = exact ? 0.0 : tolerance;
    if (report.first_failure) return;
    if (anti > tol)
      report.first_failure = AlgebraFailure{"antisymmetry", x, y, anti};
    else if (orth > tol)
      report.first_failure = AlgebraFailure{"orthogonality", x, y, orth};
    else if (nrm > tol)
      report.first_failure = AlgebraFailure{"norm", x, y, nrm};
  };

  for (int j = 1; j <= 7; ++j)
    for (int k = 1; k <= 7; ++k) {
      check(basis(j), basis(k), true);
      ++report.basis_pairs_checked;
    }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Vector7 x, y;
    for (std::size_t i = 0; i < 7; ++i) x[i] = normal(rng);
    for (std::size_t i = 0; i < 7; ++i) y[i] = normal(rng);
    check(x, y, false);
    ++report.random_pairs_checked;
  }
  return report;
}

}  // namespace nks6
