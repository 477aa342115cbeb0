// Timing harness for the two data-parallel kernels: energy-table
// construction and mission-ensemble evaluation. Runs each kernel on the
// serial reference path and with the OpenMP worker pool, verifies the
// outputs are bit-identical, and reports the speedup.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "voltroute/benchmark.hpp"
#include "voltroute/energy_table.hpp"
#include "voltroute/params_io.hpp"

using namespace voltroute;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voltroute-bench: serial vs. OpenMP kernel comparison"};
  std::string params_path = "params/octorotor.json";
  int threads = 0;
  double x_max = 40.0, z_span = 20.0, step = 4.0;
  int missions = 48;
  app.add_option("--params", params_path, "vehicle parameter JSON");
  app.add_option("--threads", threads, "parallel worker count (0 = all)");
  app.add_option("--x-max", x_max, "table grid X extent (m)");
  app.add_option("--z-span", z_span, "table grid Z half-extent (m)");
  app.add_option("--step", step, "table grid step (m)");
  app.add_option("--missions", missions, "ensemble size");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  const int workers = threads > 0 ? threads : omp_get_max_threads();
#else
  const int workers = 1;
  std::puts("built without OpenMP; parallel path falls back to serial");
#endif

  const VehicleParams vehicle = load_vehicle_params(params_path);
  const GridSpec spec{0.0, x_max, step, -z_span, z_span, step};
  std::printf("table kernel: %d x %d cells, dt %.3f s\n", spec.nx(), spec.nz(),
              kDefaultTimeStep);

  auto t0 = std::chrono::steady_clock::now();
  const EnergyTable serial_table = build_table(spec, vehicle, kDefaultTimeStep, 1);
  const double serial_build = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const EnergyTable parallel_table =
      build_table(spec, vehicle, kDefaultTimeStep, workers);
  const double parallel_build = seconds_since(t0);

  const bool tables_match = serial_table.values == parallel_table.values;
  std::printf("  serial   %8.3f s\n", serial_build);
  std::printf("  %2d-way   %8.3f s   speedup %.2fx   bit-identical: %s\n",
              workers, parallel_build, serial_build / parallel_build,
              tables_match ? "yes" : "NO");

  // Ensemble kernel over a box the table hull covers.
  BenchmarkConfig config;
  config.n_waypoints = 6;
  config.mission_count = missions;
  config.xy_range = spec.x_hull_max() / (2.0 * 1.4143);
  config.z_range = spec.z_hull_max() / 2.0;
  config.rng_seed = 7;
  std::printf("ensemble kernel: %d missions, %d waypoints, box +-%.1f/+-%.1f m\n",
              config.mission_count, config.n_waypoints, config.xy_range,
              config.z_range);

  t0 = std::chrono::steady_clock::now();
  const auto serial_run = run_benchmark(config, serial_table, 1);
  const double serial_bench = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const auto parallel_run = run_benchmark(config, serial_table, workers);
  const double parallel_bench = seconds_since(t0);

  bool records_match = serial_run.first.size() == parallel_run.first.size();
  for (size_t i = 0; records_match && i < serial_run.first.size(); ++i) {
    const auto& a = serial_run.first[i];
    const auto& b = parallel_run.first[i];
    records_match = a.min_energy.energy == b.min_energy.energy &&
                    a.min_energy.order == b.min_energy.order &&
                    a.min_dist.forward.energy == b.min_dist.forward.energy &&
                    a.min_vert.forward.energy == b.min_vert.forward.energy &&
                    a.min_dist_differs == b.min_dist_differs;
  }
  std::printf("  serial   %8.3f s\n", serial_bench);
  std::printf("  %2d-way   %8.3f s   speedup %.2fx   bit-identical: %s\n",
              workers, parallel_bench, serial_bench / parallel_bench,
              records_match ? "yes" : "NO");

  return (tables_match && records_match) ? 0 : 1;
}
