#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nks6/cayley.hpp"
#include "nks6/jet.hpp"

namespace nks6 {

// Open coordinate box; lower[i] < upper[i].
struct ChartBox {
  std::vector<double> lower, upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const std::vector<double>& u) const {
    if (u.size() != lower.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!(u[i] > lower[i] && u[i] < upper[i])) return false;
    return true;
  }
  std::vector<double> center() const {
    std::vector<double> c(lower.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
    return c;
  }
};

// Chart map u -> x(u) in R^7 evaluated on coordinate jets.  Implementations
// must be pure: the same evaluator is called from every sample point.
using ChartMap = std::function<Vec7<Jet>(const std::vector<Jet>&)>;

struct Immersion {
  int dim = 0;
  ChartBox domain;
  ChartMap map;
  std::string label;

  Vec7<Jet> evaluate(const std::vector<double>& u, int order) const {
    if (static_cast<int>(u.size()) != dim) throw std::invalid_argument("chart point has wrong dimension");
    return map(coordinate_jets(u, order));
  }

  Vector7 position(const std::vector<double>& u) const {
    const Vec7<Jet> x = evaluate(u, 0);
    Vector7 p;
    for (std::size_t i = 0; i < 7; ++i) p[i] = x[i].value();
    return p;
  }
};

// Uniform tensor grid over the box shrunk by `margin` (fraction of each side)
// at both ends.  resolution.size() must equal the box dimension.
inline std::vector<std::vector<double>> sample_grid(const ChartBox& box, const std::vector<int>& resolution,
                                                    double margin = 0.1) {
  if (static_cast<int>(resolution.size()) != box.dim())
    throw std::invalid_argument("grid resolution does not match chart dimension");
  std::vector<std::vector<double>> axes;
  for (std::size_t i = 0; i < resolution.size(); ++i) {
    const int n = resolution[i];
    if (n < 1) throw std::invalid_argument("grid resolution must be positive");
    const double w = box.upper[i] - box.lower[i];
    const double a = box.lower[i] + margin * w, b = box.upper[i] - margin * w;
    std::vector<double> axis;
    for (int k = 0; k < n; ++k) axis.push_back(n == 1 ? 0.5 * (a + b) : a + (b - a) * k / (n - 1));
    axes.push_back(std::move(axis));
  }
  std::vector<std::vector<double>> points{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& p : points)
      for (double v : axis) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    points = std::move(next);
  }
  return points;
}

}  // namespace nks6
