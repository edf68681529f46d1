#pragma once

// Truncated multivariate Taylor arithmetic.
//
// A Jet holds the Taylor coefficients of a smooth real function of up to
// three chart variables, truncated at total degree <= 4.  Coefficients are
// stored densely in graded lexicographic order of their multi-indices; the
// coefficient of x^a is (d^|a| f / dx^a) / a!.  Lower-order jets use a
// prefix of the same layout, so truncation is a resize.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nks6 {

inline constexpr int kMaxJetVars = 3;
inline constexpr int kMaxJetOrder = 4;
inline constexpr int kMaxJetSize = 35;  // C(3 + 4, 4)

using MultiIndex = std::array<int, kMaxJetVars>;

class JetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

constexpr int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Multi-index bookkeeping for one variable count.
struct JetLayout {
  int nvars = 0;
  std::vector<MultiIndex> index;              // position -> multi-index
  std::vector<int> degree;                    // position -> |a|
  std::array<int, kMaxJetOrder + 1> size{};   // order -> coefficient count
  // raise[v][p] = position of index[p] + e_v (or -1 past max order)
  std::array<std::vector<int>, kMaxJetVars> raise;
  struct Term {
    int lhs, rhs, out, out_degree;
  };
  std::vector<Term> products;  // sorted by out_degree

  int find(const MultiIndex& a) const {
    for (std::size_t p = 0; p < index.size(); ++p)
      if (index[p] == a) return static_cast<int>(p);
    return -1;
  }

  explicit JetLayout(int n) : nvars(n) {
    for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
      // graded lexicographic: within a degree, larger leading exponent first
      MultiIndex a{};
      auto emit = [&](auto&& self, int var, int remaining) -> void {
        if (var == nvars - 1) {
          a[var] = remaining;
          index.push_back(a);
          degree.push_back(deg);
          return;
        }
        for (int e = remaining; e >= 0; --e) {
          a[var] = e;
          self(self, var + 1, remaining - e);
        }
        a[var] = 0;
      };
      emit(emit, 0, deg);
      size[deg] = static_cast<int>(index.size());
    }
    for (int v = 0; v < nvars; ++v) {
      raise[v].assign(index.size(), -1);
      for (std::size_t p = 0; p < index.size(); ++p) {
        MultiIndex b = index[p];
        ++b[v];
        raise[v][p] = find(b);
      }
    }
    for (std::size_t i = 0; i < index.size(); ++i)
      for (std::size_t j = 0; j < index.size(); ++j) {
        if (degree[i] + degree[j] > kMaxJetOrder) continue;
        MultiIndex s{};
        for (int v = 0; v < kMaxJetVars; ++v) s[v] = index[i][v] + index[j][v];
        products.push_back({static_cast<int>(i), static_cast<int>(j), find(s),
                            degree[i] + degree[j]});
      }
    std::stable_sort(products.begin(), products.end(),
                     [](const Term& x, const Term& y) { return x.out_degree < y.out_degree; });
  }
};

inline const JetLayout& layout(int nvars) {
  static const std::array<JetLayout, kMaxJetVars> layouts{JetLayout(1), JetLayout(2),
                                                          JetLayout(3)};
  return layouts[static_cast<std::size_t>(nvars - 1)];
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

class Jet {
 public:
  Jet() = default;

  Jet(int nvars, int order) : nvars_(nvars), order_(order) {
    if (nvars < 1 || nvars > kMaxJetVars)
      throw JetError("jet variable count must be in 1..3, got " + std::to_string(nvars));
    if (order < 0 || order > kMaxJetOrder)
      throw JetError("jet order must be in 0..4, got " + std::to_string(order));
  }

  static Jet constant(int nvars, int order, double value) {
    Jet j(nvars, order);
    j.c_[0] = value;
    return j;
  }

  // The jet of the coordinate function u_var at the expansion point `value`.
  static Jet variable(int nvars, int order, int var, double value) {
    Jet j = constant(nvars, order, value);
    if (var < 0 || var >= nvars) throw JetError("jet variable index out of range");
    if (order >= 1) j.c_[static_cast<std::size_t>(1 + var)] = 1.0;
    return j;
  }

  int num_vars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return nvars_ == 0 ? 1 : detail::layout(nvars_).size[order_]; }

  double value() const { return c_[0]; }
  double coefficient(int position) const { return c_[static_cast<std::size_t>(position)]; }
  double& coefficient(int position) { return c_[static_cast<std::size_t>(position)]; }

  double coefficient(const MultiIndex& a) const {
    const int p = position_of(a);
    return c_[static_cast<std::size_t>(p)];
  }

  // Partial derivative d^|a| / du^a at the expansion point.
  double partial(const MultiIndex& a) const {
    double fact = 1.0;
    for (int v = 0; v < kMaxJetVars; ++v) fact *= detail::factorial(a[v]);
    return coefficient(a) * fact;
  }

  Jet truncated(int order) const {
    if (order > order_) throw JetError("cannot raise jet order by truncation");
    Jet r(nvars_, order);
    for (int p = 0; p < r.size(); ++p) r.c_[static_cast<std::size_t>(p)] = c_[static_cast<std::size_t>(p)];
    return r;
  }

  // Jet of d/du_var; the order drops by one.
  Jet derivative(int var) const {
    if (var < 0 || var >= nvars_) throw JetError("derivative variable out of range");
    if (order_ == 0) throw JetError("cannot differentiate an order-0 jet");
    const auto& L = detail::layout(nvars_);
    Jet r(nvars_, order_ - 1);
    for (int p = 0; p < r.size(); ++p) {
      const int q = L.raise[static_cast<std::size_t>(var)][static_cast<std::size_t>(p)];
      r.c_[static_cast<std::size_t>(p)] =
          (L.index[static_cast<std::size_t>(p)][static_cast<std::size_t>(var)] + 1) *
          c_[static_cast<std::size_t>(q)];
    }
    return r;
  }

  Jet& operator+=(const Jet& o) {
    combine_shape(o);
    for (int p = 0; p < size(); ++p) c_[static_cast<std::size_t>(p)] += o.c_[static_cast<std::size_t>(p)];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    combine_shape(o);
    for (int p = 0; p < size(); ++p) c_[static_cast<std::size_t>(p)] -= o.c_[static_cast<std::size_t>(p)];
    return *this;
  }
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(double s) {
    for (int p = 0; p < size(); ++p) c_[static_cast<std::size_t>(p)] *= s;
    return *this;
  }
  Jet& operator/=(double s) { return *this *= (1.0 / s); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    check_vars(a, b);
    const int order = std::min(a.order_, b.order_);
    Jet r(a.nvars_, order);
    for (const auto& t : detail::layout(a.nvars_).products) {
      if (t.out_degree > order) break;
      r.c_[static_cast<std::size_t>(t.out)] +=
          a.c_[static_cast<std::size_t>(t.lhs)] * b.c_[static_cast<std::size_t>(t.rhs)];
    }
    return r;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(double s, const Jet& b);
  friend Jet operator-(Jet a) { return a *= -1.0; }

  friend bool operator==(const Jet& a, const Jet& b) {
    if (a.nvars_ != b.nvars_ || a.order_ != b.order_) return false;
    for (int p = 0; p < a.size(); ++p)
      if (a.c_[static_cast<std::size_t>(p)] != b.c_[static_cast<std::size_t>(p)]) return false;
    return true;
  }

  // Applies a scalar function given its derivatives at the constant term:
  // f(a0 + d) = sum_k f^(k)(a0) / k! d^k, exact because d is nilpotent.
  template <class Derivs>
  Jet compose(const Derivs& derivs_at) const {
    std::array<double, kMaxJetOrder + 1> d{};
    derivs_at(c_[0], order_, d);
    Jet delta = *this;
    delta.c_[0] = 0.0;
    Jet r = constant(nvars_, order_, d[0]);
    Jet power = constant(nvars_, order_, 1.0);
    for (int k = 1; k <= order_; ++k) {
      power = power * delta;
      Jet term = power;
      term *= d[static_cast<std::size_t>(k)] / detail::factorial(k);
      r += term;
    }
    return r;
  }

 private:
  int position_of(const MultiIndex& a) const {
    int deg = 0;
    for (int v = 0; v < kMaxJetVars; ++v) {
      if (a[v] < 0 || (v >= nvars_ && a[v] != 0)) throw JetError("invalid multi-index");
      deg += a[v];
    }
    if (deg > order_) throw JetError("multi-index exceeds jet order");
    return detail::layout(nvars_).find(a);
  }

  static void check_vars(const Jet& a, const Jet& b) {
    if (a.nvars_ != b.nvars_)
      throw JetError("jet shape mismatch: " + std::to_string(a.nvars_) + " vs " +
                     std::to_string(b.nvars_) + " variables");
  }

  // Mixed orders combine at the lower order (the higher terms are unknown).
  void combine_shape(const Jet& o) {
    check_vars(*this, o);
    if (o.order_ < order_) *this = truncated(o.order_);
  }

  int nvars_ = 1;
  int order_ = 0;
  std::array<double, kMaxJetSize> c_{};
};

inline Jet sin(const Jet& a) {
  return a.compose([](double x, int n, auto& d) {
    for (int k = 0; k <= n; ++k) {
      switch (k % 4) {
        case 0: d[k] = std::sin(x); break;
        case 1: d[k] = std::cos(x); break;
        case 2: d[k] = -std::sin(x); break;
        default: d[k] = -std::cos(x); break;
      }
    }
  });
}

inline Jet cos(const Jet& a) {
  return a.compose([](double x, int n, auto& d) {
    for (int k = 0; k <= n; ++k) {
      switch (k % 4) {
        case 0: d[k] = std::cos(x); break;
        case 1: d[k] = -std::sin(x); break;
        case 2: d[k] = -std::cos(x); break;
        default: d[k] = std::sin(x); break;
      }
    }
  });
}

inline Jet exp(const Jet& a) {
  return a.compose([](double x, int n, auto& d) {
    for (int k = 0; k <= n; ++k) d[k] = std::exp(x);
  });
}

inline Jet sqrt(const Jet& a) {
  if (!(a.value() > 0.0))
    throw JetError("sqrt of jet with non-positive constant term " + std::to_string(a.value()));
  return a.compose([](double x, int n, auto& d) {
    double coef = 1.0;
    double e = 0.5;
    for (int k = 0; k <= n; ++k) {
      d[k] = coef * std::pow(x, e);
      coef *= e;
      e -= 1.0;
    }
  });
}

inline Jet reciprocal(const Jet& a) {
  if (a.value() == 0.0) throw JetError("reciprocal of jet with zero constant term");
  return a.compose([](double x, int n, auto& d) {
    double v = 1.0 / x;
    double sign_fact = 1.0;
    for (int k = 0; k <= n; ++k) {
      d[k] = sign_fact * v;
      v /= x;
      sign_fact *= -(k + 1);
    }
  });
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

// Substitutes `inner` jets (one per variable of `outer`) into the Taylor
// polynomial `outer`, which is expanded at the constant terms of `inner`.
// The result is exact through min(outer.order(), inner order).
inline Jet compose(const Jet& outer, const std::vector<Jet>& inner) {
  if (static_cast<int>(inner.size()) != outer.num_vars())
    throw JetError("compose: need one inner jet per outer variable");
  const auto& L = detail::layout(outer.num_vars());
  std::vector<Jet> delta;
  for (const auto& j : inner) {
    Jet d = j;
    d -= j.value();
    delta.push_back(d);
  }
  int order = outer.order();
  for (const auto& d : delta) order = std::min(order, d.order());
  Jet r = Jet::constant(inner.front().num_vars(), order, 0.0);
  for (int p = 0; p < L.size[order]; ++p) {
    const double coef = outer.coefficient(p);
    if (coef == 0.0) continue;
    Jet term = Jet::constant(r.num_vars(), order, coef);
    for (std::size_t v = 0; v < delta.size(); ++v)
      for (int e = 0; e < L.index[static_cast<std::size_t>(p)][v]; ++e) term = term * delta[v];
    r += term;
  }
  return r;
}

// A zero jet with the shape of `a`.
inline Jet zero_like(const Jet& a) { return a * 0.0; }

inline double extract_partial(const Jet& a, const MultiIndex& index) { return a.partial(index); }

// Jets of the chart coordinates expanded at `point`.
inline std::vector<Jet> coordinate_jets(const std::vector<double>& point, int order) {
  const int n = static_cast<int>(point.size());
  std::vector<Jet> out;
  out.reserve(point.size());
  for (int v = 0; v < n; ++v) out.push_back(Jet::variable(n, order, v, point[static_cast<std::size_t>(v)]));
  return out;
}

}  // namespace nks6
