#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "voltroute/energy_table.hpp"
#include "voltroute/leg_energy.hpp"

namespace voltroute {

struct Point3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Closed-tour mission: start at the origin, visit every waypoint once,
// return to the origin.
struct Mission {
  Point3 origin{};
  std::vector<Point3> waypoints;

  int waypoint_count() const { return static_cast<int>(waypoints.size()); }
  void validate() const;
};

Mission mission_from_json(const nlohmann::json& doc);
nlohmann::json mission_to_json(const Mission& mission);
Mission load_mission(const std::string& path);

enum class CostMode { energy, dist_total, dist_horiz, dist_vert };

const char* cost_mode_name(CostMode mode);

// (N_W + 1)-node leg-cost matrix, node 0 = origin. Energy mode is generally
// asymmetric (climbing costs more than descending); distance modes are
// symmetric.
struct CostMatrix {
  CostMode mode = CostMode::energy;
  int nodes = 0;
  std::vector<double> cost;  // row-major

  double at(int i, int j) const { return cost[i * nodes + j]; }
  double& at(int i, int j) { return cost[i * nodes + j]; }
  int waypoint_count() const { return nodes - 1; }
};

struct TourSolution {
  std::vector<int> order;  // waypoint indices 1..N_W in visit sequence
  double cost = 0.0;
};

enum class Direction { forward, reverse };

// One visiting order with its energy and distance metrics. The distance
// metrics are direction-independent; energy is not.
struct OrderResult {
  std::vector<int> order;
  Direction direction = Direction::forward;
  double energy = 0.0;   // J
  double d_total = 0.0;  // m
  double d_horiz = 0.0;  // m
  double d_vert = 0.0;   // m
};

struct DirectionPair {
  OrderResult forward;
  OrderResult reverse;

  const OrderResult& best_energy() const {
    return forward.energy <= reverse.energy ? forward : reverse;
  }
};

struct BaselineSet {
  DirectionPair min_dist;   // min D_M
  DirectionPair min_horiz;  // min X_M
  DirectionPair min_vert;   // min Z_M, X_M tie-break
};

LegDisplacement leg_geometry(const Point3& p, const Point3& q);

CostMatrix build_cost_matrix(const Mission& mission, const EnergyTable& table,
                             CostMode mode);

// Closed-tour cost of a visiting order, summed in traversal sequence.
double tour_cost(const CostMatrix& matrix, const std::vector<int>& order);

// Global optimum by enumerating all N_W! orders (guarded at N_W <= 10);
// ties broken by the lexicographically smallest order.
TourSolution solve_exhaustive(const CostMatrix& matrix);

// Same optimum via the subset dynamic program (guarded at N_W <= 20), same
// tie-break. Costs of both exact solvers agree exactly.
TourSolution solve_held_karp(const CostMatrix& matrix);

// Full metrics for an order traversed in the given direction.
OrderResult order_metrics(const std::vector<int>& order, Direction direction,
                          const Mission& mission, const EnergyTable& table);

// The three minimum-distance reference orders, each with energy evaluated in
// both traversal directions. min_vert minimizes Z_M with X_M as tie-break.
BaselineSet baseline_orders(const Mission& mission, const EnergyTable& table);

// Minimum-energy order (exact) as a direction pair; the solver already
// optimizes over direction, so forward is the optimum.
DirectionPair min_energy_order(const Mission& mission, const EnergyTable& table);

}  // namespace voltroute
