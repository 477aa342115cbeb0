#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "voltroute/milp.hpp"

// Constraint-evaluation oracle for exported MTZ models: builds the variable
// assignment induced by a visiting order and checks every constraint and
// bound of the in-memory model.

namespace voltroute::testing {

inline std::vector<double> assignment_for_order(const MilpModel& model,
                                                const std::vector<int>& order) {
  std::vector<double> x(model.variables.size(), 0.0);
  int prev = 0;
  int position = 1;
  for (int s : order) {
    x[model.arc_var(prev, s)] = 1.0;
    x[model.position_var(s)] = position++;
    prev = s;
  }
  x[model.arc_var(prev, 0)] = 1.0;
  return x;
}

inline bool satisfies_all_constraints(const MilpModel& model,
                                      const std::vector<double>& x,
                                      std::string* violation = nullptr) {
  for (const auto& v : model.variables) {
    const double value = x[&v - model.variables.data()];
    if (value < v.lower - 1e-9 || value > v.upper + 1e-9) {
      if (violation) *violation = "bound on " + v.name;
      return false;
    }
    if (v.binary && value != 0.0 && value != 1.0) {
      if (violation) *violation = "integrality of " + v.name;
      return false;
    }
  }
  for (const auto& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coeff * x[t.var];
    bool ok = true;
    switch (c.sense) {
      case MilpSense::le: ok = lhs <= c.rhs + 1e-9; break;
      case MilpSense::ge: ok = lhs >= c.rhs - 1e-9; break;
      case MilpSense::eq: ok = std::abs(lhs - c.rhs) <= 1e-9; break;
    }
    if (!ok) {
      if (violation) *violation = c.name;
      return false;
    }
  }
  return true;
}

// Objective of a 0/1 tour assignment. The nonzero terms are exactly the tour
// arcs, so the sum is taken by walking the tour from the origin; this matches
// the traversal-order summation the exact solvers report.
inline double tour_objective(const MilpModel& model, const CostMatrix& matrix,
                             const std::vector<double>& x) {
  double total = 0.0;
  int current = 0;
  for (int steps = 0; steps < model.nodes; ++steps) {
    int next = -1;
    for (int j = 0; j < model.nodes; ++j) {
      if (j == current) continue;
      if (x[model.arc_var(current, j)] == 1.0) {
        next = j;
        break;
      }
    }
    if (next < 0) return std::nan("");
    total += matrix.at(current, next);
    current = next;
  }
  return current == 0 ? total : std::nan("");
}

}  // namespace voltroute::testing
