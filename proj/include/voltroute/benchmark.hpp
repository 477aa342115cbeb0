#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "voltroute/planner.hpp"

namespace voltroute {

// Which direction's energy a baseline order is charged with in statistics:
// `best` takes the cheaper of the two traversals (conservative — it
// understates the min-energy order's advantage); `forward` charges the
// canonical direction, mirroring that a distance-only planner cannot tell
// the directions apart.
enum class DirectionConvention { best, forward };

const char* direction_convention_name(DirectionConvention c);
DirectionConvention direction_convention_from_name(const std::string& name);

struct BenchmarkConfig {
  int n_waypoints = 6;
  double xy_range = 30.0;  // waypoints uniform in [-xy_range, xy_range]^2
  double z_range = 25.0;   // and [-z_range, z_range]
  int mission_count = 500;
  uint64_t rng_seed = 1;
  DirectionConvention convention = DirectionConvention::best;

  void validate() const;
};

BenchmarkConfig benchmark_config_from_json(const nlohmann::json& doc);
BenchmarkConfig load_benchmark_config(const std::string& path);

struct MissionRecord {
  int mission_id = 0;
  OrderResult min_energy;  // exact optimum, already direction-optimal
  DirectionPair min_dist;
  DirectionPair min_horiz;
  DirectionPair min_vert;
  // True when the min-D_M order differs from the min-energy order as an
  // undirected tour (a reversed copy does not count as different).
  bool min_dist_differs = false;

  double baseline_energy(const DirectionPair& pair,
                         DirectionConvention convention) const {
    return convention == DirectionConvention::best ? pair.best_energy().energy
                                                   : pair.forward.energy;
  }
};

struct BaselineStats {
  double mean_increase_pct = 0.0;
  double p90_increase_pct = 0.0;  // nearest-rank percentile
  double max_increase_pct = 0.0;
};

struct SummaryStats {
  int mission_count = 0;
  DirectionConvention convention = DirectionConvention::best;
  BaselineStats min_dist;
  BaselineStats min_horiz;
  BaselineStats min_vert;
  double fraction_min_dist_differs = 0.0;
  // Pairwise strict-win fractions among the baselines.
  double frac_min_vert_beats_min_dist = 0.0;
  double frac_min_horiz_beats_min_dist = 0.0;
  double frac_min_vert_beats_min_horiz = 0.0;
};

// Waypoints are i.i.d. uniform in the box, origin at (0,0,0), mission k fully
// determined by (rng_seed, k). Draw order per waypoint: x, y, z.
std::vector<Mission> generate_missions(const BenchmarkConfig& config);

// Runs the exact min-energy order and the three baselines on every mission.
// threads == 1 is the serial reference path; output is identical for any
// thread count.
std::pair<std::vector<MissionRecord>, SummaryStats> run_benchmark(
    const BenchmarkConfig& config, const EnergyTable& table, int threads = 0);

SummaryStats summarize(const std::vector<MissionRecord>& records,
                       DirectionConvention convention);

struct ReportPaths {
  std::string missions_csv;
  std::string summary_json;
  std::string histogram_csv;
};

// Per-mission CSV, summary JSON, and histogram CSV of E_baseline / E_min
// ratios (bin width 0.005 on [1.0, 1.3] plus an overflow bin).
void emit_reports(const std::vector<MissionRecord>& records,
                  const SummaryStats& stats, const ReportPaths& paths);

}  // namespace voltroute
