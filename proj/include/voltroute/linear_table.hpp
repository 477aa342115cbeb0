#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "voltroute/errors.hpp"

namespace voltroute {

// Piecewise-linear function of one variable, defined by sorted (x, y) knots.
// Evaluation outside the knot range clamps to the end values.
class LinearTable {
 public:
  LinearTable() = default;

  explicit LinearTable(std::vector<std::pair<double, double>> knots)
      : knots_(std::move(knots)) {
    if (knots_.empty()) throw UsageError("linear table needs at least one knot");
    if (!std::is_sorted(knots_.begin(), knots_.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; }))
      throw UsageError("linear table knots must be sorted by x");
  }

  double operator()(double x) const {
    if (x <= knots_.front().first) return knots_.front().second;
    if (x >= knots_.back().first) return knots_.back().second;
    auto hi = std::upper_bound(
        knots_.begin(), knots_.end(), x,
        [](double v, const auto& k) { return v < k.first; });
    auto lo = hi - 1;
    const double t = (x - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
  }

  bool empty() const { return knots_.empty(); }
  double x_min() const { return knots_.front().first; }
  double x_max() const { return knots_.back().first; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

}  // namespace voltroute
