#include "voltroute/milp.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "voltroute/errors.hpp"

namespace voltroute {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// "x_0_1", "- u_2", "+ 3 x_1_2"; the writer joins terms with single spaces.
std::string term_str(double coeff, const std::string& name, bool leading) {
  std::string out;
  if (coeff < 0.0) {
    out += "- ";
    coeff = -coeff;
  } else if (!leading) {
    out += "+ ";
  }
  if (coeff != 1.0) out += num(coeff) + " ";
  out += name;
  return out;
}

}  // namespace

int MilpModel::arc_var(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= nodes || j >= nodes)
    throw UsageError("milp: no arc variable for (" + std::to_string(i) + ", " +
                     std::to_string(j) + ")");
  // Arcs are laid out row by row, skipping the diagonal.
  return i * (nodes - 1) + (j < i ? j : j - 1);
}

int MilpModel::position_var(int i) const {
  if (i < 1 || i >= nodes)
    throw UsageError("milp: no position variable for node " + std::to_string(i));
  return nodes * (nodes - 1) + (i - 1);
}

MilpModel build_mtz_model(const CostMatrix& matrix) {
  MilpModel model;
  model.nodes = matrix.nodes;
  const int n = matrix.nodes;
  const int nw = n - 1;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      MilpVariable v;
      v.name = "x_" + std::to_string(i) + "_" + std::to_string(j);
      v.binary = true;
      v.lower = 0.0;
      v.upper = 1.0;
      model.variables.push_back(v);
    }
  for (int i = 1; i <= nw; ++i) {
    MilpVariable v;
    v.name = "u_" + std::to_string(i);
    v.binary = false;
    v.lower = 1.0;
    v.upper = nw;
    model.variables.push_back(v);
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      model.objective.push_back({model.arc_var(i, j), matrix.at(i, j)});
    }

  // Degree constraints: one arc out of and one arc into every node.
  for (int i = 0; i < n; ++i) {
    MilpConstraint out;
    out.name = "out_" + std::to_string(i);
    out.sense = MilpSense::eq;
    out.rhs = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) out.terms.push_back({model.arc_var(i, j), 1.0});
    model.constraints.push_back(out);

    MilpConstraint in;
    in.name = "in_" + std::to_string(i);
    in.sense = MilpSense::eq;
    in.rhs = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) in.terms.push_back({model.arc_var(j, i), 1.0});
    model.constraints.push_back(in);
  }

  // MTZ subtour elimination over the non-origin nodes:
  //   u_i - u_j + N_W x_i_j <= N_W - 1
  for (int i = 1; i <= nw; ++i)
    for (int j = 1; j <= nw; ++j) {
      if (i == j) continue;
      MilpConstraint c;
      c.name = "mtz_" + std::to_string(i) + "_" + std::to_string(j);
      c.sense = MilpSense::le;
      c.rhs = nw - 1.0;
      c.terms.push_back({model.position_var(i), 1.0});
      c.terms.push_back({model.position_var(j), -1.0});
      c.terms.push_back({model.arc_var(i, j), static_cast<double>(nw)});
      model.constraints.push_back(c);
    }
  return model;
}

void write_lp(const MilpModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write LP file: " + path);

  out << "\\ asymmetric TSP, " << model.nodes
      << " nodes (node 0 = origin), MTZ subtour elimination\n";
  out << "Minimize\n obj:";
  for (size_t k = 0; k < model.objective.size(); ++k) {
    const auto& t = model.objective[k];
    out << " " << term_str(t.coeff, model.variables[t.var].name, k == 0);
    if ((k + 1) % 6 == 0 && k + 1 < model.objective.size()) out << "\n     ";
  }
  out << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out << " " << c.name << ":";
    for (size_t k = 0; k < c.terms.size(); ++k) {
      out << " " << term_str(c.terms[k].coeff, model.variables[c.terms[k].var].name,
                             k == 0);
      if ((k + 1) % 8 == 0 && k + 1 < c.terms.size()) out << "\n     ";
    }
    switch (c.sense) {
      case MilpSense::le: out << " <= "; break;
      case MilpSense::ge: out << " >= "; break;
      case MilpSense::eq: out << " = "; break;
    }
    out << num(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const auto& v : model.variables)
    if (!v.binary)
      out << " " << num(v.lower) << " <= " << v.name << " <= " << num(v.upper)
          << "\n";
  out << "Binaries\n";
  int on_line = 0;
  for (const auto& v : model.variables) {
    if (!v.binary) continue;
    out << " " << v.name;
    if (++on_line % 10 == 0) out << "\n";
  }
  if (on_line % 10 != 0) out << "\n";
  out << "End\n";
}

void export_milp(const CostMatrix& matrix, const std::string& path) {
  write_lp(build_mtz_model(matrix), path);
}

}  // namespace voltroute
