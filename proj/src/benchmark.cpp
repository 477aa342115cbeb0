#include "voltroute/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "voltroute/errors.hpp"
#include "voltroute/rng.hpp"

namespace voltroute {

namespace {

using nlohmann::json;

constexpr double kHistLow = 1.0;
constexpr double kHistHigh = 1.3;
constexpr double kHistBinWidth = 0.005;
constexpr int kHistBins = 60;  // [1.0, 1.3) in 0.005 steps, plus overflow

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool same_tour_undirected(const std::vector<int>& a, const std::vector<int>& b) {
  if (a == b) return true;
  std::vector<int> rev(b.rbegin(), b.rend());
  return a == rev;
}

MissionRecord evaluate_mission(int id, const Mission& mission,
                               const EnergyTable& table) {
  MissionRecord rec;
  rec.mission_id = id;
  rec.min_energy = min_energy_order(mission, table).forward;
  const BaselineSet baselines = baseline_orders(mission, table);
  rec.min_dist = baselines.min_dist;
  rec.min_horiz = baselines.min_horiz;
  rec.min_vert = baselines.min_vert;
  rec.min_dist_differs =
      !same_tour_undirected(rec.min_dist.forward.order, rec.min_energy.order);
  return rec;
}

double nearest_rank_percentile(std::vector<double> values, double pct) {
  std::sort(values.begin(), values.end());
  const size_t rank = static_cast<size_t>(
      std::ceil(pct / 100.0 * static_cast<double>(values.size())));
  return values[std::max<size_t>(rank, 1) - 1];
}

BaselineStats baseline_stats(const std::vector<double>& increases) {
  BaselineStats s;
  double sum = 0.0;
  for (double v : increases) {
    sum += v;
    s.max_increase_pct = std::max(s.max_increase_pct, v);
  }
  s.mean_increase_pct = sum / static_cast<double>(increases.size());
  s.p90_increase_pct = nearest_rank_percentile(increases, 90.0);
  return s;
}

std::string order_string(const std::vector<int>& order) {
  std::string s;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(order[i]);
  }
  return s;
}

}  // namespace

const char* direction_convention_name(DirectionConvention c) {
  return c == DirectionConvention::best ? "best" : "forward";
}

DirectionConvention direction_convention_from_name(const std::string& name) {
  if (name == "best") return DirectionConvention::best;
  if (name == "forward") return DirectionConvention::forward;
  throw UsageError("direction convention must be 'best' or 'forward', got '" +
                   name + "'");
}

void BenchmarkConfig::validate() const {
  if (mission_count < 1) throw UsageError("benchmark: mission_count must be >= 1");
  if (!(xy_range > 0.0) || !(z_range > 0.0))
    throw UsageError("benchmark: ranges must be > 0");
  if (n_waypoints < 2 || n_waypoints > 14)
    throw UsageError("benchmark: n_waypoints must be in [2, 14]");
}

BenchmarkConfig benchmark_config_from_json(const json& doc) {
  BenchmarkConfig c;
  if (!doc.is_object()) throw UsageError("benchmark config must be a JSON object");
  c.n_waypoints = doc.value("n_waypoints", c.n_waypoints);
  c.xy_range = doc.value("xy_range", c.xy_range);
  c.z_range = doc.value("z_range", c.z_range);
  c.mission_count = doc.value("mission_count", c.mission_count);
  c.rng_seed = doc.value("rng_seed", c.rng_seed);
  if (doc.contains("direction_convention"))
    c.convention = direction_convention_from_name(
        doc.at("direction_convention").get<std::string>());
  c.validate();
  return c;
}

BenchmarkConfig load_benchmark_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open benchmark config: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw UsageError("benchmark config '" + path + "' is not valid JSON: " +
                     e.what());
  }
  return benchmark_config_from_json(doc);
}

std::vector<Mission> generate_missions(const BenchmarkConfig& config) {
  config.validate();
  std::vector<Mission> missions(config.mission_count);
  for (int k = 0; k < config.mission_count; ++k) {
    SplitMix64 rng = mission_stream(config.rng_seed, static_cast<uint64_t>(k));
    Mission& m = missions[k];
    m.origin = {0.0, 0.0, 0.0};
    m.waypoints.resize(config.n_waypoints);
    for (auto& w : m.waypoints) {
      w.x = rng.uniform(-config.xy_range, config.xy_range);
      w.y = rng.uniform(-config.xy_range, config.xy_range);
      w.z = rng.uniform(-config.z_range, config.z_range);
    }
  }
  return missions;
}

std::pair<std::vector<MissionRecord>, SummaryStats> run_benchmark(
    const BenchmarkConfig& config, const EnergyTable& table, int threads) {
  config.validate();

  // Coverage check up front: the worst leg is the full box diagonal between
  // waypoints, plus the full two-sided vertical span.
  const double max_horiz = 2.0 * std::numbers::sqrt2 * config.xy_range;
  const double max_vert = 2.0 * config.z_range;
  const GridSpec& g = table.spec;
  if (g.x_min > 0.0 || g.x_hull_max() < max_horiz || g.z_min > -max_vert ||
      g.z_hull_max() < max_vert)
    throw TableRangeError(
        "energy table does not cover the mission box: need X [0, " +
            std::to_string(max_horiz) + "], Z [-" + std::to_string(max_vert) +
            ", " + std::to_string(max_vert) + "]",
        g.x_min, g.x_hull_max(), g.z_min, g.z_hull_max());

  const std::vector<Mission> missions = generate_missions(config);
  std::vector<MissionRecord> records(missions.size());

  if (threads == 1) {
    for (size_t i = 0; i < missions.size(); ++i)
      records[i] = evaluate_mission(static_cast<int>(i), missions[i], table);
  } else {
#ifdef _OPENMP
    std::string first_error;
    int first_error_idx = static_cast<int>(missions.size());
    std::mutex error_mutex;
    const int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(requested)
    for (int i = 0; i < static_cast<int>(missions.size()); ++i) {
      try {
        records[i] = evaluate_mission(i, missions[i], table);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < first_error_idx) {
          first_error_idx = i;
          first_error = e.what();
        }
      }
    }
    if (first_error_idx < static_cast<int>(missions.size()))
      throw ModelError("benchmark: mission " + std::to_string(first_error_idx) +
                       " failed: " + first_error);
#else
    for (size_t i = 0; i < missions.size(); ++i)
      records[i] = evaluate_mission(static_cast<int>(i), missions[i], table);
#endif
  }

  return {records, summarize(records, config.convention)};
}

SummaryStats summarize(const std::vector<MissionRecord>& records,
                       DirectionConvention convention) {
  if (records.empty()) throw UsageError("summarize: no records");

  SummaryStats stats;
  stats.mission_count = static_cast<int>(records.size());
  stats.convention = convention;

  std::vector<double> inc_dist, inc_horiz, inc_vert;
  inc_dist.reserve(records.size());
  inc_horiz.reserve(records.size());
  inc_vert.reserve(records.size());
  int differs = 0, vert_beats_dist = 0, horiz_beats_dist = 0,
      vert_beats_horiz = 0;
  for (const auto& r : records) {
    const double e_min = r.min_energy.energy;
    const double e_dist = r.baseline_energy(r.min_dist, convention);
    const double e_horiz = r.baseline_energy(r.min_horiz, convention);
    const double e_vert = r.baseline_energy(r.min_vert, convention);
    inc_dist.push_back(100.0 * (e_dist - e_min) / e_min);
    inc_horiz.push_back(100.0 * (e_horiz - e_min) / e_min);
    inc_vert.push_back(100.0 * (e_vert - e_min) / e_min);
    differs += r.min_dist_differs ? 1 : 0;
    vert_beats_dist += e_vert < e_dist ? 1 : 0;
    horiz_beats_dist += e_horiz < e_dist ? 1 : 0;
    vert_beats_horiz += e_vert < e_horiz ? 1 : 0;
  }
  stats.min_dist = baseline_stats(inc_dist);
  stats.min_horiz = baseline_stats(inc_horiz);
  stats.min_vert = baseline_stats(inc_vert);
  const double n = static_cast<double>(records.size());
  stats.fraction_min_dist_differs = differs / n;
  stats.frac_min_vert_beats_min_dist = vert_beats_dist / n;
  stats.frac_min_horiz_beats_min_dist = horiz_beats_dist / n;
  stats.frac_min_vert_beats_min_horiz = vert_beats_horiz / n;
  return stats;
}

void emit_reports(const std::vector<MissionRecord>& records,
                  const SummaryStats& stats, const ReportPaths& paths) {
  // Per-mission CSV. Records are written in mission-id order so output is
  // byte-identical for any worker count.
  std::ofstream csv(paths.missions_csv);
  if (!csv) throw UsageError("cannot write " + paths.missions_csv);
  csv << "mission_id,min_energy_order,min_energy_e_j,min_energy_d_m,"
         "min_energy_x_m,min_energy_z_m,"
         "min_d_order,min_d_e_fwd_j,min_d_e_rev_j,min_d_d_m,min_d_x_m,min_d_z_m,"
         "min_x_order,min_x_e_fwd_j,min_x_e_rev_j,min_x_d_m,min_x_x_m,min_x_z_m,"
         "min_z_order,min_z_e_fwd_j,min_z_e_rev_j,min_z_d_m,min_z_x_m,min_z_z_m,"
         "min_d_differs\n";
  std::vector<const MissionRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->mission_id < b->mission_id;
  });
  for (const auto* r : sorted) {
    const auto pair_cols = [&](const DirectionPair& p) {
      return order_string(p.forward.order) + "," + fmt(p.forward.energy) + "," +
             fmt(p.reverse.energy) + "," + fmt(p.forward.d_total) + "," +
             fmt(p.forward.d_horiz) + "," + fmt(p.forward.d_vert);
    };
    csv << r->mission_id << "," << order_string(r->min_energy.order) << ","
        << fmt(r->min_energy.energy) << "," << fmt(r->min_energy.d_total) << ","
        << fmt(r->min_energy.d_horiz) << "," << fmt(r->min_energy.d_vert) << ","
        << pair_cols(r->min_dist) << "," << pair_cols(r->min_horiz) << ","
        << pair_cols(r->min_vert) << "," << (r->min_dist_differs ? 1 : 0)
        << "\n";
  }
  csv.close();

  // Summary JSON.
  auto baseline_json = [](const BaselineStats& b) {
    return json{{"mean_increase_pct", b.mean_increase_pct},
                {"p90_increase_pct", b.p90_increase_pct},
                {"max_increase_pct", b.max_increase_pct}};
  };
  json summary{
      {"mission_count", stats.mission_count},
      {"direction_convention", direction_convention_name(stats.convention)},
      {"min_dist", baseline_json(stats.min_dist)},
      {"min_horiz", baseline_json(stats.min_horiz)},
      {"min_vert", baseline_json(stats.min_vert)},
      {"fraction_min_dist_differs", stats.fraction_min_dist_differs},
      {"frac_min_vert_beats_min_dist", stats.frac_min_vert_beats_min_dist},
      {"frac_min_horiz_beats_min_dist", stats.frac_min_horiz_beats_min_dist},
      {"frac_min_vert_beats_min_horiz", stats.frac_min_vert_beats_min_horiz}};
  std::ofstream js(paths.summary_json);
  if (!js) throw UsageError("cannot write " + paths.summary_json);
  js << summary.dump(2) << "\n";
  js.close();

  // Histogram CSV of E_baseline / E_min ratios.
  struct Hist {
    const char* name;
    std::vector<long> bins = std::vector<long>(kHistBins + 1, 0);
  };
  Hist hists[3] = {{"min_d"}, {"min_x"}, {"min_z"}};
  for (const auto* r : sorted) {
    const double e_min = r->min_energy.energy;
    const double ratios[3] = {
        r->baseline_energy(r->min_dist, stats.convention) / e_min,
        r->baseline_energy(r->min_horiz, stats.convention) / e_min,
        r->baseline_energy(r->min_vert, stats.convention) / e_min};
    for (int b = 0; b < 3; ++b) {
      int bin = static_cast<int>((ratios[b] - kHistLow) / kHistBinWidth);
      if (ratios[b] >= kHistHigh || bin >= kHistBins) bin = kHistBins;
      if (bin < 0) bin = 0;  // ratios < 1 cannot occur (optimality)
      ++hists[b].bins[bin];
    }
  }
  std::ofstream hist(paths.histogram_csv);
  if (!hist) throw UsageError("cannot write " + paths.histogram_csv);
  hist << "baseline,bin_low,bin_high,count\n";
  for (const auto& h : hists) {
    for (int bin = 0; bin < kHistBins; ++bin)
      hist << h.name << "," << fmt(kHistLow + bin * kHistBinWidth) << ","
           << fmt(kHistLow + (bin + 1) * kHistBinWidth) << "," << h.bins[bin]
           << "\n";
    hist << h.name << "," << fmt(kHistHigh) << ",inf," << h.bins[kHistBins]
         << "\n";
  }
}

}  // namespace voltroute
