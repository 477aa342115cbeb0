#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "support/synthetic_table.hpp"
#include "voltroute/benchmark.hpp"
#include "voltroute/errors.hpp"

using namespace voltroute;
using voltroute::testing::synthetic_table;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MissionRecord synthetic_record(int id, double e_min, double e_dist,
                               double e_horiz, double e_vert, bool differs) {
  MissionRecord r;
  r.mission_id = id;
  r.min_energy.energy = e_min;
  r.min_dist.forward.energy = e_dist;
  r.min_dist.reverse.energy = e_dist;
  r.min_horiz.forward.energy = e_horiz;
  r.min_horiz.reverse.energy = e_horiz;
  r.min_vert.forward.energy = e_vert;
  r.min_vert.reverse.energy = e_vert;
  r.min_dist_differs = differs;
  return r;
}

}  // namespace

TEST_CASE("generate_missions: seeded and reproducible") {
  BenchmarkConfig cfg;
  cfg.n_waypoints = 4;
  cfg.mission_count = 20;
  cfg.rng_seed = 77;
  const auto a = generate_missions(cfg);
  const auto b = generate_missions(cfg);
  REQUIRE(a.size() == 20);
  for (size_t i = 0; i < a.size(); ++i)
    for (int w = 0; w < 4; ++w) {
      CHECK(a[i].waypoints[w].x == b[i].waypoints[w].x);
      CHECK(a[i].waypoints[w].y == b[i].waypoints[w].y);
      CHECK(a[i].waypoints[w].z == b[i].waypoints[w].z);
    }
  // Different seeds decorrelate.
  cfg.rng_seed = 78;
  const auto c = generate_missions(cfg);
  CHECK(c[0].waypoints[0].x != a[0].waypoints[0].x);
}

TEST_CASE("generate_missions: fills the requested counts") {
  BenchmarkConfig cfg;
  cfg.n_waypoints = 8;
  cfg.mission_count = 5000;
  cfg.rng_seed = 3;
  const auto missions = generate_missions(cfg);
  CHECK(missions.size() == 5000);
  for (const auto& m : missions) CHECK(m.waypoint_count() == 8);
}

TEST_CASE("generate_missions: uniform box statistics") {
  BenchmarkConfig cfg;
  cfg.n_waypoints = 5;
  cfg.mission_count = 2000;  // 10^4 waypoints
  cfg.xy_range = 30.0;
  cfg.z_range = 25.0;
  cfg.rng_seed = 12345;
  const auto missions = generate_missions(cfg);
  double sum_x = 0.0, sum_y = 0.0, sum_z = 0.0;
  double min_x = 1e9, max_x = -1e9, min_z = 1e9, max_z = -1e9;
  int n = 0;
  for (const auto& m : missions)
    for (const auto& w : m.waypoints) {
      sum_x += w.x;
      sum_y += w.y;
      sum_z += w.z;
      min_x = std::min(min_x, w.x);
      max_x = std::max(max_x, w.x);
      min_z = std::min(min_z, w.z);
      max_z = std::max(max_z, w.z);
      ++n;
    }
  REQUIRE(n == 10000);
  CHECK(min_x >= -30.0);
  CHECK(max_x <= 30.0);
  CHECK(min_z >= -25.0);
  CHECK(max_z <= 25.0);
  // Mean of n uniform draws: |mean| < 3 * sigma / sqrt(n).
  const double bound_xy = 3.0 * (60.0 / std::sqrt(12.0)) / std::sqrt(10000.0);
  const double bound_z = 3.0 * (50.0 / std::sqrt(12.0)) / std::sqrt(10000.0);
  CHECK(std::abs(sum_x / n) < bound_xy);
  CHECK(std::abs(sum_y / n) < bound_xy);
  CHECK(std::abs(sum_z / n) < bound_z);
}

TEST_CASE("run_benchmark: optimality holds on every record") {
  const EnergyTable table = synthetic_table();
  BenchmarkConfig cfg;
  cfg.n_waypoints = 5;
  cfg.mission_count = 30;
  cfg.rng_seed = 99;
  const auto [records, stats] = run_benchmark(cfg, table);
  REQUIRE(records.size() == 30);
  int differ_count = 0;
  for (const auto& r : records) {
    for (const DirectionPair* p : {&r.min_dist, &r.min_horiz, &r.min_vert}) {
      CHECK(r.baseline_energy(*p, DirectionConvention::best) >=
            r.min_energy.energy - 1e-9);
      CHECK(r.baseline_energy(*p, DirectionConvention::forward) >=
            r.min_energy.energy - 1e-9);
    }
    differ_count += r.min_dist_differs ? 1 : 0;
  }
  CHECK(stats.fraction_min_dist_differs ==
        doctest::Approx(differ_count / 30.0));
  CHECK(stats.min_dist.max_increase_pct >= stats.min_dist.p90_increase_pct);
  CHECK(stats.min_dist.max_increase_pct >= stats.min_dist.mean_increase_pct);
}

TEST_CASE("run_benchmark: rejects a table that cannot cover the box") {
  const EnergyTable small = synthetic_table(20.0, 10.0);
  BenchmarkConfig cfg;
  cfg.n_waypoints = 4;
  cfg.mission_count = 5;
  CHECK_THROWS_AS(run_benchmark(cfg, small), TableRangeError);
}

TEST_CASE("run_benchmark + emit_reports: byte-identical at 1 and 8 workers") {
  const EnergyTable table = synthetic_table();
  BenchmarkConfig cfg;
  cfg.n_waypoints = 5;
  cfg.mission_count = 24;
  cfg.rng_seed = 4242;
  const auto serial = run_benchmark(cfg, table, 1);
  const auto parallel = run_benchmark(cfg, table, 8);

  const auto dir = std::filesystem::temp_directory_path();
  const ReportPaths paths_a{(dir / "vr_a_missions.csv").string(),
                            (dir / "vr_a_summary.json").string(),
                            (dir / "vr_a_hist.csv").string()};
  const ReportPaths paths_b{(dir / "vr_b_missions.csv").string(),
                            (dir / "vr_b_summary.json").string(),
                            (dir / "vr_b_hist.csv").string()};
  emit_reports(serial.first, serial.second, paths_a);
  emit_reports(parallel.first, parallel.second, paths_b);
  CHECK(slurp(paths_a.missions_csv) == slurp(paths_b.missions_csv));
  CHECK(slurp(paths_a.summary_json) == slurp(paths_b.summary_json));
  CHECK(slurp(paths_a.histogram_csv) == slurp(paths_b.histogram_csv));
  for (const auto& p : {paths_a, paths_b}) {
    std::filesystem::remove(p.missions_csv);
    std::filesystem::remove(p.summary_json);
    std::filesystem::remove(p.histogram_csv);
  }
}

TEST_CASE("summarize: degenerate and two-point examples") {
  std::vector<MissionRecord> one{synthetic_record(0, 50.0, 50.0, 50.0, 50.0, false)};
  const SummaryStats s1 = summarize(one, DirectionConvention::best);
  CHECK(s1.min_dist.mean_increase_pct == 0.0);
  CHECK(s1.min_dist.max_increase_pct == 0.0);
  CHECK(s1.fraction_min_dist_differs == 0.0);

  std::vector<MissionRecord> two{
      synthetic_record(0, 100.0, 100.0, 100.0, 100.0, false),
      synthetic_record(1, 100.0, 110.0, 120.0, 105.0, true)};
  const SummaryStats s2 = summarize(two, DirectionConvention::best);
  CHECK(s2.min_dist.mean_increase_pct == doctest::Approx(5.0));
  CHECK(s2.min_dist.max_increase_pct == doctest::Approx(10.0));
  // Nearest-rank 90th percentile of n=2: rank = ceil(0.9 * 2) = 2.
  CHECK(s2.min_dist.p90_increase_pct == doctest::Approx(10.0));
  CHECK(s2.fraction_min_dist_differs == doctest::Approx(0.5));
  CHECK_THROWS_AS(summarize({}, DirectionConvention::best), UsageError);
}

TEST_CASE("summarize: matches an independent statistics oracle") {
  // 1000 records with a known increase distribution.
  std::vector<MissionRecord> records;
  std::vector<double> increases;
  for (int i = 0; i < 1000; ++i) {
    const double pct = (i % 100) * 0.25;  // 0 .. 24.75%
    increases.push_back(pct);
    records.push_back(synthetic_record(i, 1000.0, 1000.0 * (1.0 + pct / 100.0),
                                       2000.0, 1500.0, i % 3 == 0));
  }
  const SummaryStats stats = summarize(records, DirectionConvention::forward);

  double sum = 0.0, mx = 0.0;
  for (double p : increases) {
    sum += p;
    mx = std::max(mx, p);
  }
  std::vector<double> sorted = increases;
  std::sort(sorted.begin(), sorted.end());
  const double p90 = sorted[static_cast<size_t>(std::ceil(0.9 * 1000)) - 1];
  CHECK(stats.min_dist.mean_increase_pct == doctest::Approx(sum / 1000.0).epsilon(1e-12));
  CHECK(stats.min_dist.max_increase_pct == doctest::Approx(mx).epsilon(1e-12));
  CHECK(stats.min_dist.p90_increase_pct == doctest::Approx(p90).epsilon(1e-12));
  CHECK(stats.fraction_min_dist_differs == doctest::Approx(334.0 / 1000.0));
}

TEST_CASE("summarize: win fractions and direction conventions") {
  // Reverse direction cheaper for min-D: `best` sees 100, `forward` sees 120.
  MissionRecord r = synthetic_record(0, 100.0, 120.0, 130.0, 110.0, true);
  r.min_dist.reverse.energy = 100.0;
  CHECK(r.baseline_energy(r.min_dist, DirectionConvention::best) == 100.0);
  CHECK(r.baseline_energy(r.min_dist, DirectionConvention::forward) == 120.0);

  const SummaryStats stats = summarize({r}, DirectionConvention::forward);
  CHECK(stats.frac_min_vert_beats_min_dist == 1.0);   // 110 < 120
  CHECK(stats.frac_min_horiz_beats_min_dist == 0.0);  // 130 > 120
  CHECK(stats.frac_min_vert_beats_min_horiz == 1.0);
}

TEST_CASE("emit_reports: histogram conservation and the all-ones case") {
  std::vector<MissionRecord> records;
  for (int i = 0; i < 7; ++i)
    records.push_back(synthetic_record(i, 200.0, 200.0, 200.0, 200.0, false));
  const SummaryStats stats = summarize(records, DirectionConvention::best);

  const auto dir = std::filesystem::temp_directory_path();
  const ReportPaths paths{(dir / "vr_h_missions.csv").string(),
                          (dir / "vr_h_summary.json").string(),
                          (dir / "vr_h_hist.csv").string()};
  emit_reports(records, stats, paths);

  // Row count of the per-mission CSV equals the record count.
  std::ifstream csv(paths.missions_csv);
  std::string line;
  int rows = -1;  // header
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 7);

  // Histogram: every ratio is exactly 1.0 -> the [1.000, 1.005) bin holds
  // all records, and each baseline's bins sum to the record count.
  std::ifstream hist(paths.histogram_csv);
  std::getline(hist, line);  // header
  long first_bin_min_d = -1;
  std::map<std::string, long> totals;
  while (std::getline(hist, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string name, lo, hi, count;
    std::getline(row, name, ',');
    std::getline(row, lo, ',');
    std::getline(row, hi, ',');
    std::getline(row, count, ',');
    totals[name] += std::stol(count);
    if (name == "min_d" && lo == "1") first_bin_min_d = std::stol(count);
  }
  CHECK(first_bin_min_d == 7);
  CHECK(totals["min_d"] == 7);
  CHECK(totals["min_x"] == 7);
  CHECK(totals["min_z"] == 7);

  for (const auto& f : {paths.missions_csv, paths.summary_json, paths.histogram_csv})
    std::filesystem::remove(f);
}

TEST_CASE("benchmark config: JSON parsing and validation") {
  const auto cfg = benchmark_config_from_json(
      nlohmann::json{{"n_waypoints", 8},
                     {"xy_range", 20.0},
                     {"z_range", 25.0},
                     {"mission_count", 100},
                     {"rng_seed", 42},
                     {"direction_convention", "forward"}});
  CHECK(cfg.n_waypoints == 8);
  CHECK(cfg.convention == DirectionConvention::forward);
  CHECK_THROWS_AS(benchmark_config_from_json(
                      nlohmann::json{{"direction_convention", "sideways"}}),
                  UsageError);
  BenchmarkConfig bad;
  bad.mission_count = 0;
  CHECK_THROWS_AS(bad.validate(), UsageError);
  bad.mission_count = 10;
  bad.n_waypoints = 1;
  CHECK_THROWS_AS(bad.validate(), UsageError);
}
