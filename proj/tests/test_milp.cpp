#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/milp_eval.hpp"
#include "support/synthetic_table.hpp"
#include "voltroute/milp.hpp"
#include "voltroute/planner.hpp"
#include "voltroute/rng.hpp"

using namespace voltroute;
using voltroute::testing::assignment_for_order;
using voltroute::testing::satisfies_all_constraints;
using voltroute::testing::tour_objective;

namespace {

CostMatrix random_matrix(int n_waypoints, SplitMix64& rng) {
  CostMatrix m;
  m.nodes = n_waypoints + 1;
  m.cost.assign(static_cast<size_t>(m.nodes) * m.nodes, 0.0);
  for (int i = 0; i < m.nodes; ++i)
    for (int j = 0; j < m.nodes; ++j)
      if (i != j) m.at(i, j) = rng.uniform(1.0, 50.0);
  return m;
}

}  // namespace

TEST_CASE("mtz model: structure for two waypoints") {
  SplitMix64 rng(5);
  const CostMatrix m = random_matrix(2, rng);
  const MilpModel model = build_mtz_model(m);
  int binaries = 0, continuous = 0;
  for (const auto& v : model.variables) (v.binary ? binaries : continuous)++;
  CHECK(binaries == 6);  // all arcs of the 3-node digraph
  CHECK(continuous == 2);
  int degree = 0, mtz = 0;
  for (const auto& c : model.constraints) {
    if (c.name.starts_with("out_") || c.name.starts_with("in_")) ++degree;
    if (c.name.starts_with("mtz_")) ++mtz;
  }
  CHECK(degree == 6);  // one out_ and one in_ per node
  CHECK(mtz == 2);
}

TEST_CASE("mtz model: every node owns exactly one out- and one in-constraint") {
  SplitMix64 rng(6);
  const CostMatrix m = random_matrix(5, rng);
  const MilpModel model = build_mtz_model(m);
  for (int node = 0; node < m.nodes; ++node) {
    int out_found = 0, in_found = 0;
    for (const auto& c : model.constraints) {
      if (c.name == "out_" + std::to_string(node)) ++out_found;
      if (c.name == "in_" + std::to_string(node)) ++in_found;
    }
    CHECK(out_found == 1);
    CHECK(in_found == 1);
  }
}

TEST_CASE("mtz model: optimal tours satisfy every constraint at the exact cost") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 8; ++trial) {
    const CostMatrix m = random_matrix(3 + trial % 5, rng);
    const MilpModel model = build_mtz_model(m);
    const TourSolution sol = solve_held_karp(m);
    const auto x = assignment_for_order(model, sol.order);
    std::string violation;
    CHECK_MESSAGE(satisfies_all_constraints(model, x, &violation), violation);
    CHECK(tour_objective(model, m, x) == sol.cost);
  }
}

TEST_CASE("mtz model: split subtours are rejected") {
  SplitMix64 rng(8);
  const CostMatrix m = random_matrix(4, rng);
  const MilpModel model = build_mtz_model(m);
  // 0 -> 1 -> 0 plus the disconnected loop 2 -> 3 -> 4 -> 2.
  std::vector<double> x(model.variables.size(), 0.0);
  x[model.arc_var(0, 1)] = 1.0;
  x[model.arc_var(1, 0)] = 1.0;
  x[model.arc_var(2, 3)] = 1.0;
  x[model.arc_var(3, 4)] = 1.0;
  x[model.arc_var(4, 2)] = 1.0;
  x[model.position_var(1)] = 1.0;
  x[model.position_var(2)] = 2.0;
  x[model.position_var(3)] = 3.0;
  x[model.position_var(4)] = 4.0;
  CHECK_FALSE(satisfies_all_constraints(model, x));
}

TEST_CASE("export_milp: writes a well-formed LP document") {
  SplitMix64 rng(9);
  const CostMatrix m = random_matrix(3, rng);
  const auto path =
      std::filesystem::temp_directory_path() / "voltroute_model.lp";
  export_milp(m, path.string());

  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string lp = buffer.str();
  for (const char* token : {"Minimize", "obj:", "Subject To", "out_0:",
                            "in_3:", "mtz_1_2:", "Bounds", "Binaries", "End"})
    CHECK_MESSAGE(lp.find(token) != std::string::npos, token);
  // MTZ row for a 3-waypoint instance: u_1 - u_2 + 3 x_1_2 <= 2.
  CHECK(lp.find("u_1 - u_2 + 3 x_1_2 <= 2") != std::string::npos);
  std::filesystem::remove(path);
}
