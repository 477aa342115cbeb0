#include "voltroute/planner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "voltroute/errors.hpp"

namespace voltroute {

namespace {

using nlohmann::json;

constexpr int kExhaustiveMaxWaypoints = 10;
constexpr int kHeldKarpMaxWaypoints = 20;

Point3 node_point(const Mission& mission, int node) {
  return node == 0 ? mission.origin : mission.waypoints[node - 1];
}

void check_order(const std::vector<int>& order, int n_waypoints) {
  if (static_cast<int>(order.size()) != n_waypoints)
    throw UsageError("order must visit every waypoint exactly once");
  std::vector<bool> seen(n_waypoints + 1, false);
  for (int s : order) {
    if (s < 1 || s > n_waypoints || seen[s])
      throw UsageError("order is not a permutation of 1..N_W");
    seen[s] = true;
  }
}

void check_matrix(const CostMatrix& matrix) {
  if (matrix.nodes < 2 ||
      matrix.cost.size() != static_cast<size_t>(matrix.nodes) * matrix.nodes)
    throw UsageError("cost matrix: inconsistent dimensions");
  for (int i = 0; i < matrix.nodes; ++i) {
    if (matrix.at(i, i) != 0.0)
      throw UsageError("cost matrix: diagonal must be zero");
    for (int j = 0; j < matrix.nodes; ++j)
      if (!std::isfinite(matrix.at(i, j)) || matrix.at(i, j) < 0.0)
        throw UsageError("cost matrix: entries must be finite and >= 0");
  }
}

// Sum of per-leg values in a traversal-independent order, so a tour and its
// reverse produce bit-identical symmetric metrics.
double sorted_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

double sorted_tour_sum(const CostMatrix& matrix, const std::vector<int>& order,
                       std::vector<double>& scratch) {
  scratch.clear();
  int prev = 0;
  for (int s : order) {
    scratch.push_back(matrix.at(prev, s));
    prev = s;
  }
  scratch.push_back(matrix.at(prev, 0));
  return sorted_sum(scratch);
}

// Z_M-primary / X_M-secondary cost for the minimum-vertical-distance order.
struct LexCost {
  double primary = 0.0;
  double secondary = 0.0;

  LexCost operator+(const LexCost& o) const {
    return {primary + o.primary, secondary + o.secondary};
  }
  bool operator<(const LexCost& o) const {
    if (primary != o.primary) return primary < o.primary;
    return secondary < o.secondary;
  }
};

// Subset DP over "start at j, visit exactly `mask`, return to node 0".
// Reconstruction picks the smallest next waypoint among exact ties, which
// yields the lexicographically smallest optimal order.
template <typename Cost, typename CostAt>
std::vector<int> held_karp_order(int n_waypoints, CostAt&& cost_at) {
  const int full = (1 << n_waypoints) - 1;
  const size_t stride = static_cast<size_t>(full) + 1;
  std::vector<Cost> suffix(static_cast<size_t>(n_waypoints + 1) * stride);
  auto h = [&](int j, int mask) -> Cost& {
    return suffix[static_cast<size_t>(j) * stride + mask];
  };

  for (int j = 0; j <= n_waypoints; ++j) h(j, 0) = cost_at(j, 0);
  for (int mask = 1; mask <= full; ++mask) {
    for (int j = 0; j <= n_waypoints; ++j) {
      if (j > 0 && (mask >> (j - 1)) & 1) continue;
      bool first = true;
      Cost best{};
      for (int k = 1; k <= n_waypoints; ++k) {
        const int bit = 1 << (k - 1);
        if (!(mask & bit)) continue;
        const Cost cand = cost_at(j, k) + h(k, mask ^ bit);
        if (first || cand < best) {
          best = cand;
          first = false;
        }
      }
      h(j, mask) = best;
    }
  }

  std::vector<int> order;
  order.reserve(n_waypoints);
  int current = 0;
  int mask = full;
  while (mask != 0) {
    int best_k = -1;
    bool first = true;
    Cost best{};
    for (int k = 1; k <= n_waypoints; ++k) {
      const int bit = 1 << (k - 1);
      if (!(mask & bit)) continue;
      const Cost cand = cost_at(current, k) + h(k, mask ^ bit);
      if (first || cand < best) {
        best = cand;
        best_k = k;
        first = false;
      }
    }
    order.push_back(best_k);
    mask ^= 1 << (best_k - 1);
    current = best_k;
  }
  return order;
}

// Two-stage exact search for the min-Z_M order: minimum Z_M first, minimum
// X_M among the Z_M-optimal orders. Enumeration for small missions, a
// lexicographic-cost subset DP above the enumeration guard.
std::vector<int> min_vert_order(const CostMatrix& vert, const CostMatrix& horiz) {
  const int nw = vert.waypoint_count();
  if (nw <= kExhaustiveMaxWaypoints) {
    std::vector<int> perm(nw);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<int> best_order;
    LexCost best{};
    bool first = true;
    std::vector<double> scratch;
    scratch.reserve(nw + 1);
    do {
      const LexCost cand{sorted_tour_sum(vert, perm, scratch),
                         sorted_tour_sum(horiz, perm, scratch)};
      if (first || cand < best) {
        best = cand;
        best_order = perm;
        first = false;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best_order;
  }
  if (nw > kHeldKarpMaxWaypoints)
    throw UsageError("min-Z_M order: mission too large for exact search");
  return held_karp_order<LexCost>(nw, [&](int i, int j) {
    return LexCost{vert.at(i, j), horiz.at(i, j)};
  });
}

}  // namespace

void Mission::validate() const {
  auto finite = [](const Point3& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
  };
  if (!finite(origin)) throw UsageError("mission: origin must be finite");
  if (waypoints.empty()) throw UsageError("mission: needs at least 1 waypoint");
  for (const auto& w : waypoints)
    if (!finite(w)) throw UsageError("mission: waypoints must be finite");
  for (size_t i = 0; i < waypoints.size(); ++i)
    for (size_t j = i + 1; j < waypoints.size(); ++j)
      if (waypoints[i].x == waypoints[j].x && waypoints[i].y == waypoints[j].y &&
          waypoints[i].z == waypoints[j].z)
        throw UsageError("mission: waypoints " + std::to_string(i + 1) + " and " +
                         std::to_string(j + 1) + " coincide");
}

Mission mission_from_json(const json& doc) {
  auto point = [](const json& arr, const std::string& what) {
    if (!arr.is_array() || arr.size() != 3)
      throw UsageError("mission: " + what + " must be [x, y, z]");
    return Point3{arr[0].get<double>(), arr[1].get<double>(),
                  arr[2].get<double>()};
  };
  Mission m;
  if (!doc.is_object() || !doc.contains("waypoints"))
    throw UsageError("mission: document needs 'origin' and 'waypoints'");
  m.origin = doc.contains("origin") ? point(doc.at("origin"), "origin")
                                    : Point3{0.0, 0.0, 0.0};
  for (const auto& w : doc.at("waypoints"))
    m.waypoints.push_back(point(w, "waypoint"));
  m.validate();
  return m;
}

json mission_to_json(const Mission& mission) {
  json waypoints = json::array();
  for (const auto& w : mission.waypoints) waypoints.push_back({w.x, w.y, w.z});
  return json{{"origin", {mission.origin.x, mission.origin.y, mission.origin.z}},
              {"waypoints", waypoints}};
}

Mission load_mission(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open mission file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw UsageError("mission file '" + path + "' is not valid JSON: " + e.what());
  }
  return mission_from_json(doc);
}

const char* cost_mode_name(CostMode mode) {
  switch (mode) {
    case CostMode::energy: return "energy";
    case CostMode::dist_total: return "dist_total";
    case CostMode::dist_horiz: return "dist_horiz";
    case CostMode::dist_vert: return "dist_vert";
  }
  return "unknown";
}

LegDisplacement leg_geometry(const Point3& p, const Point3& q) {
  return {std::hypot(q.x - p.x, q.y - p.y), q.z - p.z};
}

CostMatrix build_cost_matrix(const Mission& mission, const EnergyTable& table,
                             CostMode mode) {
  mission.validate();
  CostMatrix matrix;
  matrix.mode = mode;
  matrix.nodes = mission.waypoint_count() + 1;
  matrix.cost.assign(static_cast<size_t>(matrix.nodes) * matrix.nodes, 0.0);

  for (int i = 0; i < matrix.nodes; ++i) {
    for (int j = 0; j < matrix.nodes; ++j) {
      if (i == j) continue;
      const LegDisplacement leg =
          leg_geometry(node_point(mission, i), node_point(mission, j));
      double value = 0.0;
      switch (mode) {
        case CostMode::energy:
          try {
            value = interpolate(table, leg);
          } catch (const TableRangeError& e) {
            throw TableRangeError("leg " + std::to_string(i) + " -> " +
                                      std::to_string(j) + ": " + e.what(),
                                  e.hull_x_min, e.hull_x_max, e.hull_z_min,
                                  e.hull_z_max);
          }
          break;
        case CostMode::dist_total:
          value = std::hypot(leg.x_f, leg.z_f);
          break;
        case CostMode::dist_horiz:
          value = leg.x_f;
          break;
        case CostMode::dist_vert:
          value = std::abs(leg.z_f);
          break;
      }
      matrix.at(i, j) = value;
    }
  }
  return matrix;
}

double tour_cost(const CostMatrix& matrix, const std::vector<int>& order) {
  check_order(order, matrix.waypoint_count());
  double cost = 0.0;
  int prev = 0;
  for (int s : order) {
    cost += matrix.at(prev, s);
    prev = s;
  }
  cost += matrix.at(prev, 0);
  return cost;
}

TourSolution solve_exhaustive(const CostMatrix& matrix) {
  check_matrix(matrix);
  const int nw = matrix.waypoint_count();
  if (nw > kExhaustiveMaxWaypoints)
    throw UsageError("solve_exhaustive: more than " +
                     std::to_string(kExhaustiveMaxWaypoints) + " waypoints");

  std::vector<int> perm(nw);
  std::iota(perm.begin(), perm.end(), 1);
  TourSolution best;
  bool first = true;
  do {
    const double cost = tour_cost(matrix, perm);
    if (first || cost < best.cost) {
      best.cost = cost;
      best.order = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

TourSolution solve_held_karp(const CostMatrix& matrix) {
  check_matrix(matrix);
  const int nw = matrix.waypoint_count();
  if (nw > kHeldKarpMaxWaypoints)
    throw UsageError("solve_held_karp: more than " +
                     std::to_string(kHeldKarpMaxWaypoints) + " waypoints");

  TourSolution best;
  best.order = held_karp_order<double>(
      nw, [&](int i, int j) { return matrix.at(i, j); });
  // Canonical traversal-order sum, so both exact solvers report identical
  // costs for identical orders.
  best.cost = tour_cost(matrix, best.order);
  return best;
}

OrderResult order_metrics(const std::vector<int>& order, Direction direction,
                          const Mission& mission, const EnergyTable& table) {
  check_order(order, mission.waypoint_count());
  std::vector<int> seq = order;
  if (direction == Direction::reverse) std::reverse(seq.begin(), seq.end());

  OrderResult result;
  result.order = order;
  result.direction = direction;

  std::vector<double> d_legs, x_legs, z_legs;
  d_legs.reserve(seq.size() + 1);
  x_legs.reserve(seq.size() + 1);
  z_legs.reserve(seq.size() + 1);

  int prev = 0;
  double energy = 0.0;
  for (size_t k = 0; k <= seq.size(); ++k) {
    const int next = (k < seq.size()) ? seq[k] : 0;
    const LegDisplacement leg =
        leg_geometry(node_point(mission, prev), node_point(mission, next));
    energy += interpolate(table, leg);
    d_legs.push_back(std::hypot(leg.x_f, leg.z_f));
    x_legs.push_back(leg.x_f);
    z_legs.push_back(std::abs(leg.z_f));
    prev = next;
  }
  result.energy = energy;
  result.d_total = sorted_sum(d_legs);
  result.d_horiz = sorted_sum(x_legs);
  result.d_vert = sorted_sum(z_legs);
  return result;
}

BaselineSet baseline_orders(const Mission& mission, const EnergyTable& table) {
  const CostMatrix dist = build_cost_matrix(mission, table, CostMode::dist_total);
  const CostMatrix horiz = build_cost_matrix(mission, table, CostMode::dist_horiz);
  const CostMatrix vert = build_cost_matrix(mission, table, CostMode::dist_vert);

  auto pair_for = [&](const std::vector<int>& order) {
    return DirectionPair{order_metrics(order, Direction::forward, mission, table),
                         order_metrics(order, Direction::reverse, mission, table)};
  };

  BaselineSet set;
  set.min_dist = pair_for(solve_held_karp(dist).order);
  set.min_horiz = pair_for(solve_held_karp(horiz).order);
  set.min_vert = pair_for(min_vert_order(vert, horiz));
  return set;
}

DirectionPair min_energy_order(const Mission& mission, const EnergyTable& table) {
  const CostMatrix energy = build_cost_matrix(mission, table, CostMode::energy);
  const TourSolution sol = solve_held_karp(energy);
  return {order_metrics(sol.order, Direction::forward, mission, table),
          order_metrics(sol.order, Direction::reverse, mission, table)};
}

}  // namespace voltroute
