#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support/oracles.hpp"
#include "support/synthetic_table.hpp"
#include "voltroute/errors.hpp"
#include "voltroute/planner.hpp"
#include "voltroute/rng.hpp"

using namespace voltroute;
using voltroute::testing::brute_force_tour;
using voltroute::testing::synthetic_energy;
using voltroute::testing::synthetic_table;

namespace {

// Sample mission 1: eight waypoints on two squares, origin at zero.
Mission sample_mission_1() {
  Mission m;
  m.origin = {0.0, 0.0, 0.0};
  m.waypoints = {{-20.0, 20.0, 19.0},  {20.0, -20.0, 19.0},
                 {-12.0, -12.0, 11.0}, {12.0, 12.0, 11.0},
                 {-12.0, 12.0, -11.0}, {12.0, -12.0, -11.0},
                 {-20.0, -20.0, -19.0}, {20.0, 20.0, -19.0}};
  return m;
}

// The 3-waypoint mission: A, B, C with a long climb out of the origin.
Mission sample_mission_3wp() {
  Mission m;
  m.origin = {0.0, 0.0, 0.0};
  m.waypoints = {{0.0, 40.0, 25.0}, {40.0, 0.0, 25.0}, {0.0, 0.0, 24.0}};
  return m;
}

CostMatrix random_asymmetric_matrix(int n_waypoints, SplitMix64& rng) {
  CostMatrix m;
  m.mode = CostMode::energy;
  m.nodes = n_waypoints + 1;
  m.cost.assign(static_cast<size_t>(m.nodes) * m.nodes, 0.0);
  for (int i = 0; i < m.nodes; ++i)
    for (int j = 0; j < m.nodes; ++j)
      if (i != j) m.at(i, j) = rng.uniform(1.0, 100.0);
  return m;
}

double vertical_lower_bound(const Mission& mission) {
  double z_max = 0.0, z_min = 0.0;
  for (const auto& w : mission.waypoints) {
    z_max = std::max(z_max, w.z);
    z_min = std::min(z_min, w.z);
  }
  return 2.0 * (z_max - z_min);
}

}  // namespace

TEST_CASE("leg_geometry: examples") {
  const LegDisplacement a = leg_geometry({0, 0, 0}, {0, 40, 25});
  CHECK(a.x_f == doctest::Approx(40.0));
  CHECK(a.z_f == doctest::Approx(25.0));
  const LegDisplacement b = leg_geometry({1, 2, 3}, {1, 2, 3});
  CHECK(b.x_f == 0.0);
  CHECK(b.z_f == 0.0);
  const LegDisplacement c = leg_geometry({0, 0, 0}, {3, 4, -2});
  CHECK(c.x_f == doctest::Approx(5.0));
  CHECK(c.z_f == doctest::Approx(-2.0));
}

TEST_CASE("build_cost_matrix: diagonal zero, energy asymmetric, distances symmetric") {
  const EnergyTable table = synthetic_table();
  const Mission m = sample_mission_3wp();
  for (const CostMode mode : {CostMode::energy, CostMode::dist_total,
                              CostMode::dist_horiz, CostMode::dist_vert}) {
    const CostMatrix matrix = build_cost_matrix(m, table, mode);
    for (int i = 0; i < matrix.nodes; ++i) CHECK(matrix.at(i, i) == 0.0);
    if (mode != CostMode::energy)
      for (int i = 0; i < matrix.nodes; ++i)
        for (int j = 0; j < matrix.nodes; ++j)
          CHECK(matrix.at(i, j) == matrix.at(j, i));
  }
  const CostMatrix energy = build_cost_matrix(m, table, CostMode::energy);
  // Origin to A climbs 25 m, A to origin descends it.
  CHECK(energy.at(0, 1) != energy.at(1, 0));
  CHECK(energy.at(0, 1) ==
        doctest::Approx(synthetic_energy(40.0, 25.0)).epsilon(1e-12));
}

TEST_CASE("build_cost_matrix: out-of-hull legs name the failing pair") {
  const EnergyTable table = synthetic_table(20.0, 10.0);
  Mission m;
  m.waypoints = {{100.0, 0.0, 0.0}, {0.0, 5.0, 2.0}};
  try {
    build_cost_matrix(m, table, CostMode::energy);
    FAIL("expected TableRangeError");
  } catch (const TableRangeError& e) {
    CHECK(std::string(e.what()).find("leg 0 -> 1") != std::string::npos);
  }
}

TEST_CASE("solve_exhaustive: single waypoint and symmetric reversal") {
  CostMatrix m;
  m.nodes = 2;
  m.cost = {0.0, 3.0, 5.0, 0.0};
  const TourSolution sol = solve_exhaustive(m);
  CHECK(sol.order == std::vector<int>{1});
  CHECK(sol.cost == doctest::Approx(8.0));

  SplitMix64 rng(3);
  CostMatrix sym = random_asymmetric_matrix(3, rng);
  for (int i = 0; i < sym.nodes; ++i)
    for (int j = i + 1; j < sym.nodes; ++j) sym.at(j, i) = sym.at(i, j);
  const TourSolution best = solve_exhaustive(sym);
  std::vector<int> reversed(best.order.rbegin(), best.order.rend());
  CHECK(tour_cost(sym, reversed) == doctest::Approx(best.cost).epsilon(1e-12));
}

TEST_CASE("solve_exhaustive: matches the recursive enumeration oracle") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const CostMatrix m = random_asymmetric_matrix(6, rng);
    const TourSolution sol = solve_exhaustive(m);
    const auto oracle = brute_force_tour(m);
    CHECK(sol.cost == oracle.cost);
    CHECK(sol.order == oracle.order);
  }
}

TEST_CASE("solve_held_karp: agrees exactly with exhaustive search") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int nw = 4 + trial % 5;
    const CostMatrix m = random_asymmetric_matrix(nw, rng);
    const TourSolution hk = solve_held_karp(m);
    const TourSolution ex = solve_exhaustive(m);
    CHECK(hk.cost == ex.cost);
    CHECK(hk.order == ex.order);
  }
}

TEST_CASE("solve_held_karp: degenerate all-equal matrix picks the lexicographic order") {
  const int nw = 5;
  CostMatrix m;
  m.nodes = nw + 1;
  m.cost.assign(static_cast<size_t>(m.nodes) * m.nodes, 2.5);
  for (int i = 0; i < m.nodes; ++i) m.at(i, i) = 0.0;
  const TourSolution hk = solve_held_karp(m);
  CHECK(hk.order == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(hk.cost == (nw + 1) * 2.5);
  const TourSolution ex = solve_exhaustive(m);
  CHECK(ex.order == hk.order);
  CHECK(ex.cost == hk.cost);
}

TEST_CASE("solve_held_karp: two waypoints reduce to a direct comparison") {
  CostMatrix m;
  m.nodes = 3;
  m.cost = {0.0, 4.0, 9.0,
            2.0, 0.0, 1.0,
            3.0, 7.0, 0.0};
  // Order 1-2: 4 + 1 + 3 = 8; order 2-1: 9 + 7 + 2 = 18.
  const TourSolution sol = solve_held_karp(m);
  CHECK(sol.order == std::vector<int>{1, 2});
  CHECK(sol.cost == doctest::Approx(8.0));
}

TEST_CASE("solver size guards") {
  CostMatrix m;
  m.nodes = 12;
  m.cost.assign(144, 1.0);
  for (int i = 0; i < 12; ++i) m.at(i, i) = 0.0;
  CHECK_THROWS_AS(solve_exhaustive(m), UsageError);

  CostMatrix big;
  big.nodes = 22;
  big.cost.assign(22 * 22, 1.0);
  for (int i = 0; i < 22; ++i) big.at(i, i) = 0.0;
  CHECK_THROWS_AS(solve_held_karp(big), UsageError);
}

TEST_CASE("order_metrics: reversal keeps distances bit-identical, changes energy") {
  const EnergyTable table = synthetic_table();
  const Mission m = sample_mission_3wp();
  // O->A->B->C->O: the reversed tour flies a different leg multiset
  // ((0,+24) up front instead of (40,+25)), so its energy differs.
  const std::vector<int> order{1, 2, 3};
  const OrderResult fwd = order_metrics(order, Direction::forward, m, table);
  const OrderResult rev = order_metrics(order, Direction::reverse, m, table);
  CHECK(fwd.d_total == rev.d_total);
  CHECK(fwd.d_horiz == rev.d_horiz);
  CHECK(fwd.d_vert == rev.d_vert);
  CHECK(fwd.energy != rev.energy);
}

TEST_CASE("order_metrics: single-waypoint mission doubles the vertical travel") {
  const EnergyTable table = synthetic_table();
  Mission m;
  m.origin = {0.0, 0.0, 0.0};
  m.waypoints = {{10.0, 0.0, -7.0}};
  const OrderResult r =
      order_metrics({1}, Direction::forward, m, table);
  CHECK(r.d_vert == doctest::Approx(14.0));
  CHECK(r.d_horiz == doctest::Approx(20.0));
}

TEST_CASE("order_metrics: reversal invariance on random missions") {
  const EnergyTable table = synthetic_table();
  SplitMix64 rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    Mission m;
    m.origin = {0.0, 0.0, 0.0};
    const int nw = 3 + static_cast<int>(rng.next() % 5);
    for (int i = 0; i < nw; ++i)
      m.waypoints.push_back({rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0),
                             rng.uniform(-25.0, 25.0)});
    std::vector<int> order(nw);
    std::iota(order.begin(), order.end(), 1);
    for (int i = nw - 1; i > 0; --i)
      std::swap(order[i], order[rng.next() % (i + 1)]);
    const OrderResult fwd = order_metrics(order, Direction::forward, m, table);
    const OrderResult rev = order_metrics(order, Direction::reverse, m, table);
    CHECK(fwd.d_total == rev.d_total);
    CHECK(fwd.d_horiz == rev.d_horiz);
    CHECK(fwd.d_vert == rev.d_vert);
    CHECK(fwd.d_vert >= vertical_lower_bound(m) - 1e-9);
  }
}

TEST_CASE("baseline_orders: sample mission 1 reproduces the published metrics") {
  const EnergyTable table = synthetic_table();
  const Mission m = sample_mission_1();
  const BaselineSet set = baseline_orders(m, table);
  CHECK(set.min_vert.forward.d_vert == doctest::Approx(76.0).epsilon(1e-6));
  CHECK(set.min_horiz.forward.d_horiz == doctest::Approx(183.2).epsilon(1e-3));
  CHECK(set.min_dist.forward.d_total == doctest::Approx(284.4).epsilon(1e-3));
  // The min-Z order hits the closed-tour vertical lower bound here.
  CHECK(set.min_vert.forward.d_vert ==
        doctest::Approx(vertical_lower_bound(m)).epsilon(1e-12));
}

TEST_CASE("baseline_orders: 3-waypoint mission min-distance metrics") {
  const EnergyTable table = synthetic_table();
  const Mission m = sample_mission_3wp();
  const BaselineSet set = baseline_orders(m, table);
  CHECK(set.min_dist.forward.d_total == doctest::Approx(167.8).epsilon(1e-3));
  CHECK(set.min_dist.forward.d_horiz == doctest::Approx(136.6).epsilon(1e-3));
  CHECK(set.min_dist.forward.d_vert == doctest::Approx(50.0).epsilon(1e-6));

  // The published alternative order O->B->C->A->O.
  const OrderResult alt =
      order_metrics({2, 3, 1}, Direction::forward, m, table);
  CHECK(alt.d_total == doctest::Approx(174.4).epsilon(1e-3));
  CHECK(alt.d_horiz == doctest::Approx(160.0).epsilon(1e-6));
  CHECK(alt.d_vert == doctest::Approx(52.0).epsilon(1e-6));
}

TEST_CASE("optimality certificates on random missions") {
  const EnergyTable table = synthetic_table();
  SplitMix64 rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    Mission m;
    m.origin = {0.0, 0.0, 0.0};
    for (int i = 0; i < 6; ++i)
      m.waypoints.push_back({rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0),
                             rng.uniform(-25.0, 25.0)});
    const DirectionPair best = min_energy_order(m, table);
    const BaselineSet set = baseline_orders(m, table);
    const double e_min = best.forward.energy;
    for (const DirectionPair* pair :
         {&set.min_dist, &set.min_horiz, &set.min_vert}) {
      CHECK(e_min <= pair->forward.energy + 1e-9);
      CHECK(e_min <= pair->reverse.energy + 1e-9);
    }
    CHECK(set.min_dist.forward.d_total <= best.forward.d_total + 1e-9);
    CHECK(set.min_horiz.forward.d_horiz <= best.forward.d_horiz + 1e-9);
    CHECK(set.min_vert.forward.d_vert <= best.forward.d_vert + 1e-9);
  }
}

TEST_CASE("min-Z tie-break picks the smallest horizontal distance") {
  const EnergyTable table = synthetic_table();
  // All waypoints share one altitude, so every order ties on Z_M = 2h and
  // the X_M tie-break must decide: walking the rectangle beats crossing it.
  Mission m;
  m.origin = {0.0, 0.0, 0.0};
  m.waypoints = {{10.0, 0.0, 5.0}, {10.0, 10.0, 5.0}, {0.0, 10.0, 5.0}};
  const BaselineSet set = baseline_orders(m, table);
  CHECK(set.min_vert.forward.d_vert == doctest::Approx(10.0));
  CHECK(set.min_vert.forward.order == std::vector<int>{1, 2, 3});
  CHECK(set.min_vert.forward.d_horiz == doctest::Approx(40.0));
}

TEST_CASE("mission validation") {
  Mission m;
  m.origin = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(m.validate(), UsageError);
  m.waypoints = {{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}};
  CHECK_THROWS_AS(m.validate(), UsageError);
  m.waypoints[1].z = 4.0;
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("mission JSON round trip") {
  const Mission m = sample_mission_1();
  const Mission back = mission_from_json(mission_to_json(m));
  REQUIRE(back.waypoint_count() == m.waypoint_count());
  for (int i = 0; i < m.waypoint_count(); ++i) {
    CHECK(back.waypoints[i].x == m.waypoints[i].x);
    CHECK(back.waypoints[i].y == m.waypoints[i].y);
    CHECK(back.waypoints[i].z == m.waypoints[i].z);
  }
  CHECK_THROWS_AS(mission_from_json(nlohmann::json{{"waypoints", 3}}), UsageError);
}
