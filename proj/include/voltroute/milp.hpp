#pragma once

#include <string>
#include <vector>

#include "voltroute/planner.hpp"

namespace voltroute {

// In-memory MILP for the asymmetric TSP with Miller-Tucker-Zemlin subtour
// elimination. Written to CPLEX LP format; also used directly by tests to
// check that exact-solver tours satisfy every constraint.
struct MilpVariable {
  std::string name;
  bool binary = false;
  double lower = 0.0;
  double upper = 1.0;
};

struct MilpTerm {
  int var = 0;
  double coeff = 0.0;
};

enum class MilpSense { le, ge, eq };

struct MilpConstraint {
  std::string name;
  std::vector<MilpTerm> terms;
  MilpSense sense = MilpSense::eq;
  double rhs = 0.0;
};

struct MilpModel {
  int nodes = 0;  // N_W + 1, node 0 = origin
  std::vector<MilpVariable> variables;
  std::vector<MilpTerm> objective;  // minimized
  std::vector<MilpConstraint> constraints;

  // Arc variable x_i_j (i != j) and position variable u_i (i >= 1).
  int arc_var(int i, int j) const;
  int position_var(int i) const;
};

MilpModel build_mtz_model(const CostMatrix& matrix);

void write_lp(const MilpModel& model, const std::string& path);

// Builds the MTZ model for the matrix and writes it as a self-contained LP
// file any external MILP solver can consume.
void export_milp(const CostMatrix& matrix, const std::string& path);

}  // namespace voltroute
