#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "voltroute/benchmark.hpp"
#include "voltroute/energy_table.hpp"
#include "voltroute/errors.hpp"
#include "voltroute/leg_energy.hpp"
#include "voltroute/milp.hpp"
#include "voltroute/params_io.hpp"
#include "voltroute/planner.hpp"

using namespace voltroute;
using nlohmann::json;

namespace {

json metrics_json(const OrderResult& r) {
  return json{{"energy_j", r.energy},
              {"d_total_m", r.d_total},
              {"d_horiz_m", r.d_horiz},
              {"d_vert_m", r.d_vert}};
}

json pair_json(const DirectionPair& p) {
  return json{{"order", p.forward.order},
              {"forward", metrics_json(p.forward)},
              {"reverse", metrics_json(p.reverse)}};
}

void write_or_print(const json& doc, const std::string& path) {
  if (path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << doc.dump(2) << "\n";
}

EnergyTable load_table_checked(const std::string& table_path,
                               const std::string& params_path,
                               bool allow_mismatch) {
  std::string expected;
  if (!params_path.empty())
    expected = vehicle_fingerprint(load_vehicle_params(params_path));
  return load_table(table_path, expected, allow_mismatch);
}

int run_simulate_leg(const std::string& params_path, double x_f, double z_f,
                     double dt, const std::string& out_path,
                     const std::string& trace_path) {
  const VehicleParams vehicle = load_vehicle_params(params_path);
  LegTrace trace;
  const LegResult result =
      simulate_leg({x_f, z_f}, vehicle, dt, {},
                   trace_path.empty() ? nullptr : &trace);
  json doc{{"leg", {{"x_f_m", x_f}, {"z_f_m", z_f}}},
           {"dt_s", dt},
           {"energy_j", result.energy},
           {"duration_s", result.duration},
           {"peak_omega_rad_s", result.peak_omega},
           {"peak_theta_rad", result.peak_theta},
           {"peak_power_w", result.peak_power},
           {"regime_warning_count", result.regime_warnings.size()}};
  write_or_print(doc, out_path);

  if (!trace_path.empty()) {
    std::ofstream csv(trace_path);
    if (!csv) throw UsageError("cannot write " + trace_path);
    csv << "time_s,x_m,z_m,theta_rad,omega_rad_s,p_battery_w\n";
    char row[160];
    for (size_t i = 0; i < trace.t.size(); ++i) {
      std::snprintf(row, sizeof(row), "%.6f,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                    trace.t[i], trace.x[i], trace.z[i], trace.theta[i],
                    trace.omega[i], trace.p_battery[i]);
      csv << row;
    }
  }
  return 0;
}

int run_build_table(const std::string& params_path, const GridSpec& spec,
                    double dt, int threads, const std::string& out_path) {
  const VehicleParams vehicle = load_vehicle_params(params_path);
  const EnergyTable table = build_table(spec, vehicle, dt, threads);
  save_table(table, out_path);
  std::cout << "table " << out_path << ": " << table.spec.nx() << " x "
            << table.spec.nz() << " cells, fingerprint "
            << table.vehicle_fingerprint << "\n";
  return 0;
}

int run_plan(const std::string& mission_path, const std::string& table_path,
             const std::string& params_path, bool allow_mismatch,
             bool skip_baselines, const std::string& out_path) {
  const Mission mission = load_mission(mission_path);
  const EnergyTable table =
      load_table_checked(table_path, params_path, allow_mismatch);

  json doc{{"mission", mission_to_json(mission)},
           {"table_fingerprint", table.vehicle_fingerprint}};
  doc["min_energy"] = pair_json(min_energy_order(mission, table));
  if (!skip_baselines) {
    const BaselineSet set = baseline_orders(mission, table);
    doc["baselines"] = json{{"min_dist", pair_json(set.min_dist)},
                            {"min_horiz", pair_json(set.min_horiz)},
                            {"min_vert", pair_json(set.min_vert)}};
  }
  write_or_print(doc, out_path);
  return 0;
}

int run_export_milp(const std::string& mission_path,
                    const std::string& table_path,
                    const std::string& params_path, bool allow_mismatch,
                    const std::string& mode_name, const std::string& out_path) {
  const Mission mission = load_mission(mission_path);
  const EnergyTable table =
      load_table_checked(table_path, params_path, allow_mismatch);
  CostMode mode;
  if (mode_name == "energy") mode = CostMode::energy;
  else if (mode_name == "dist_total") mode = CostMode::dist_total;
  else if (mode_name == "dist_horiz") mode = CostMode::dist_horiz;
  else if (mode_name == "dist_vert") mode = CostMode::dist_vert;
  else throw UsageError("unknown cost mode '" + mode_name + "'");

  export_milp(build_cost_matrix(mission, table, mode), out_path);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_bench(const std::string& config_path, const std::string& table_path,
              const std::string& params_path, bool allow_mismatch,
              const std::string& out_dir, int threads) {
  const BenchmarkConfig config = load_benchmark_config(config_path);
  const EnergyTable table =
      load_table_checked(table_path, params_path, allow_mismatch);

  std::filesystem::create_directories(out_dir);
  const auto [records, stats] = run_benchmark(config, table, threads);
  const std::filesystem::path dir(out_dir);
  emit_reports(records, stats,
               {(dir / "missions.csv").string(), (dir / "summary.json").string(),
                (dir / "histogram.csv").string()});

  std::printf("missions: %d  (min-D != min-E in %.1f%%)\n", stats.mission_count,
              100.0 * stats.fraction_min_dist_differs);
  std::printf("energy increase over min-energy order (%s direction):\n",
              direction_convention_name(stats.convention));
  auto line = [](const char* name, const BaselineStats& b) {
    std::printf("  %-8s mean %+.2f%%   p90 %+.2f%%   max %+.2f%%\n", name,
                b.mean_increase_pct, b.p90_increase_pct, b.max_increase_pct);
  };
  line("min-D", stats.min_dist);
  line("min-X", stats.min_horiz);
  line("min-Z", stats.min_vert);
  std::cout << "reports in " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voltroute: energy-optimal multirotor waypoint ordering"};
  app.require_subcommand(1);

  // simulate-leg
  auto* leg_cmd = app.add_subcommand(
      "simulate-leg", "simulate one point-to-point leg and report its energy");
  std::string leg_params, leg_out, leg_trace;
  double leg_xf = 0.0, leg_zf = 0.0, leg_dt = kDefaultTimeStep;
  leg_cmd->add_option("--params", leg_params, "vehicle parameter JSON")
      ->required();
  leg_cmd->add_option("--xf", leg_xf, "horizontal distance (m)")->required();
  leg_cmd->add_option("--zf", leg_zf, "signed vertical displacement (m)")
      ->required();
  leg_cmd->add_option("--dt", leg_dt, "integration step (s)");
  leg_cmd->add_option("--out", leg_out, "result JSON path (default: stdout)");
  leg_cmd->add_option("--trace", leg_trace, "per-sample CSV trace path");

  // build-table
  auto* table_cmd = app.add_subcommand(
      "build-table", "precompute the leg-energy table over an (X_f, Z_f) grid");
  std::string bt_params, bt_out;
  GridSpec bt_spec;
  double bt_dt = kDefaultTimeStep;
  int bt_threads = 0;
  table_cmd->add_option("--params", bt_params, "vehicle parameter JSON")
      ->required();
  table_cmd->add_option("--out", bt_out, "output table JSON path")->required();
  table_cmd->add_option("--x-min", bt_spec.x_min, "grid X minimum (m)");
  table_cmd->add_option("--x-max", bt_spec.x_max, "grid X maximum (m)");
  table_cmd->add_option("--x-step", bt_spec.x_step, "grid X step (m)");
  table_cmd->add_option("--z-min", bt_spec.z_min, "grid Z minimum (m)");
  table_cmd->add_option("--z-max", bt_spec.z_max, "grid Z maximum (m)");
  table_cmd->add_option("--z-step", bt_spec.z_step, "grid Z step (m)");
  table_cmd->add_option("--dt", bt_dt, "integration step (s)");
  table_cmd->add_option("--threads", bt_threads,
                        "worker count (0 = all, 1 = serial)");

  // plan
  auto* plan_cmd = app.add_subcommand(
      "plan", "compute min-energy and min-distance orders for a mission");
  std::string plan_mission, plan_table, plan_params, plan_out;
  bool plan_allow_mismatch = false, plan_skip_baselines = false;
  plan_cmd->add_option("--mission", plan_mission, "mission JSON")->required();
  plan_cmd->add_option("--table", plan_table, "energy table JSON")->required();
  plan_cmd->add_option("--params", plan_params,
                       "vehicle parameter JSON (checks the table fingerprint)");
  plan_cmd->add_flag("--allow-fingerprint-mismatch", plan_allow_mismatch,
                     "use the table even if it was built for other parameters");
  plan_cmd->add_flag("--skip-baselines", plan_skip_baselines,
                     "compute only the min-energy order");
  plan_cmd->add_option("--out", plan_out, "report JSON path (default: stdout)");

  // export-milp
  auto* milp_cmd = app.add_subcommand(
      "export-milp", "write the ATSP MILP (MTZ formulation) as an LP file");
  std::string milp_mission, milp_table, milp_params, milp_out;
  std::string milp_mode = "energy";
  bool milp_allow_mismatch = false;
  milp_cmd->add_option("--mission", milp_mission, "mission JSON")->required();
  milp_cmd->add_option("--table", milp_table, "energy table JSON")->required();
  milp_cmd->add_option("--params", milp_params,
                       "vehicle parameter JSON (checks the table fingerprint)");
  milp_cmd->add_flag("--allow-fingerprint-mismatch", milp_allow_mismatch,
                     "use the table even if it was built for other parameters");
  milp_cmd->add_option("--mode", milp_mode,
                       "cost matrix: energy|dist_total|dist_horiz|dist_vert");
  milp_cmd->add_option("--out", milp_out, "LP file path")->required();

  // benchmark
  auto* bench_cmd = app.add_subcommand(
      "benchmark", "run a randomized mission ensemble and emit statistics");
  std::string bench_config, bench_table, bench_params, bench_out = "results";
  bool bench_allow_mismatch = false;
  int bench_threads = 0;
  bench_cmd->add_option("--config", bench_config, "benchmark config JSON")
      ->required();
  bench_cmd->add_option("--table", bench_table, "energy table JSON")->required();
  bench_cmd->add_option("--params", bench_params,
                        "vehicle parameter JSON (checks the table fingerprint)");
  bench_cmd->add_flag("--allow-fingerprint-mismatch", bench_allow_mismatch,
                      "use the table even if it was built for other parameters");
  bench_cmd->add_option("--out-dir", bench_out, "report output directory");
  bench_cmd->add_option("--threads", bench_threads,
                        "worker count (0 = all, 1 = serial)");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(leg_cmd))
      return run_simulate_leg(leg_params, leg_xf, leg_zf, leg_dt, leg_out,
                              leg_trace);
    if (app.got_subcommand(table_cmd))
      return run_build_table(bt_params, bt_spec, bt_dt, bt_threads, bt_out);
    if (app.got_subcommand(plan_cmd))
      return run_plan(plan_mission, plan_table, plan_params,
                      plan_allow_mismatch, plan_skip_baselines, plan_out);
    if (app.got_subcommand(milp_cmd))
      return run_export_milp(milp_mission, milp_table, milp_params,
                             milp_allow_mismatch, milp_mode, milp_out);
    if (app.got_subcommand(bench_cmd))
      return run_bench(bench_config, bench_table, bench_params,
                       bench_allow_mismatch, bench_out, bench_threads);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints usage or help text
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
