#include "voltroute/energy_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <string>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "voltroute/errors.hpp"
#include "voltroute/params_io.hpp"

namespace voltroute {

namespace {

using nlohmann::json;

constexpr const char* kTableSchema = "voltroute-energy-table/1";

int steps_covering(double lo, double hi, double step) {
  return static_cast<int>(std::ceil((hi - lo) / step - 1e-9));
}

double cell_energy(const GridSpec& spec, int ix, int iz,
                   const VehicleParams& vehicle, double dt) {
  const LegDisplacement leg{spec.x_at(ix), spec.z_at(iz)};
  return simulate_leg(leg, vehicle, dt).energy;
}

}  // namespace

int GridSpec::nx() const { return steps_covering(x_min, x_max, x_step) + 1; }
int GridSpec::nz() const { return steps_covering(z_min, z_max, z_step) + 1; }

void GridSpec::validate() const {
  if (!(x_step > 0.0) || !(z_step > 0.0))
    throw UsageError("grid: steps must be > 0");
  if (x_min < 0.0) throw UsageError("grid: x_min must be >= 0");
  if (!(x_max > x_min) || !(z_max > z_min))
    throw UsageError("grid: ranges must be non-degenerate");
}

EnergyTable build_table(const GridSpec& spec, const VehicleParams& vehicle,
                        double dt, int threads) {
  spec.validate();
  vehicle.validate();
  if (!(dt > 0.0)) throw UsageError("build_table: dt must be > 0");

  EnergyTable table;
  table.spec = spec;
  table.dt = dt;
  table.code_version = kCodeVersion;
  table.vehicle_fingerprint = vehicle_fingerprint(vehicle);

  const int nx = spec.nx();
  const int nz = spec.nz();
  const int cells = nx * nz;
  table.values.assign(cells, 0.0);

  if (threads == 1) {
    // Serial reference path, kept as the ground truth the parallel kernel is
    // tested against.
    for (int idx = 0; idx < cells; ++idx)
      table.values[idx] = cell_energy(spec, idx / nz, idx % nz, vehicle, dt);
    return table;
  }

#ifdef _OPENMP
  std::string first_error;
  int first_error_idx = cells;
  std::mutex error_mutex;
  const int requested = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(requested)
  for (int idx = 0; idx < cells; ++idx) {
    try {
      table.values[idx] = cell_energy(spec, idx / nz, idx % nz, vehicle, dt);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (idx < first_error_idx) {
        first_error_idx = idx;
        first_error = e.what();
      }
    }
  }
  if (first_error_idx < cells) {
    const int ix = first_error_idx / nz, iz = first_error_idx % nz;
    throw ModelError("build_table: cell (" + std::to_string(spec.x_at(ix)) +
                     ", " + std::to_string(spec.z_at(iz)) +
                     ") failed: " + first_error);
  }
#else
  for (int idx = 0; idx < cells; ++idx)
    table.values[idx] = cell_energy(spec, idx / nz, idx % nz, vehicle, dt);
#endif
  return table;
}

double interpolate(const EnergyTable& table, const LegDisplacement& leg) {
  const GridSpec& g = table.spec;
  const double x_hi = g.x_hull_max();
  const double z_hi = g.z_hull_max();
  if (!(leg.x_f >= g.x_min) || !(leg.x_f <= x_hi) || !(leg.z_f >= g.z_min) ||
      !(leg.z_f <= z_hi))
    throw TableRangeError(
        "leg (" + std::to_string(leg.x_f) + ", " + std::to_string(leg.z_f) +
            ") outside table hull X[" + std::to_string(g.x_min) + ", " +
            std::to_string(x_hi) + "] Z[" + std::to_string(g.z_min) + ", " +
            std::to_string(z_hi) + "]",
        g.x_min, x_hi, g.z_min, z_hi);

  const int nx = g.nx(), nz = g.nz();
  int ix = static_cast<int>((leg.x_f - g.x_min) / g.x_step);
  int iz = static_cast<int>((leg.z_f - g.z_min) / g.z_step);
  ix = std::min(ix, nx - 2);
  iz = std::min(iz, nz - 2);
  const double tx = (leg.x_f - g.x_at(ix)) / g.x_step;
  const double tz = (leg.z_f - g.z_at(iz)) / g.z_step;

  const double v00 = table.at(ix, iz);
  const double v10 = table.at(ix + 1, iz);
  const double v01 = table.at(ix, iz + 1);
  const double v11 = table.at(ix + 1, iz + 1);
  return (1.0 - tx) * (1.0 - tz) * v00 + tx * (1.0 - tz) * v10 +
         (1.0 - tx) * tz * v01 + tx * tz * v11;
}

void save_table(const EnergyTable& table, const std::string& path) {
  json doc{{"schema", kTableSchema},
           {"spec",
            {{"x_min", table.spec.x_min},
             {"x_max", table.spec.x_max},
             {"x_step", table.spec.x_step},
             {"z_min", table.spec.z_min},
             {"z_max", table.spec.z_max},
             {"z_step", table.spec.z_step}}},
           {"vehicle_fingerprint", table.vehicle_fingerprint},
           {"dt", table.dt},
           {"code_version", table.code_version},
           {"values", table.values}};
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write table file: " + path);
  out << doc.dump() << "\n";
}

EnergyTable load_table(const std::string& path,
                       const std::string& expected_fingerprint,
                       bool allow_mismatch) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open table file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw UsageError("table file '" + path + "' is not valid JSON: " + e.what());
  }

  EnergyTable table;
  try {
    if (doc.at("schema") != kTableSchema)
      throw UsageError("table file '" + path + "': unsupported schema");
    const json& spec = doc.at("spec");
    table.spec.x_min = spec.at("x_min").get<double>();
    table.spec.x_max = spec.at("x_max").get<double>();
    table.spec.x_step = spec.at("x_step").get<double>();
    table.spec.z_min = spec.at("z_min").get<double>();
    table.spec.z_max = spec.at("z_max").get<double>();
    table.spec.z_step = spec.at("z_step").get<double>();
    table.vehicle_fingerprint = doc.at("vehicle_fingerprint").get<std::string>();
    table.dt = doc.at("dt").get<double>();
    table.code_version = doc.at("code_version").get<std::string>();
    table.values = doc.at("values").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw UsageError("table file '" + path + "' is malformed: " + e.what());
  }

  table.spec.validate();
  const size_t expected_cells =
      static_cast<size_t>(table.spec.nx()) * table.spec.nz();
  if (table.values.size() != expected_cells)
    throw UsageError("table file '" + path + "': value count " +
                     std::to_string(table.values.size()) +
                     " does not match grid (" + std::to_string(expected_cells) +
                     " cells)");
  for (double v : table.values)
    if (!std::isfinite(v) || v < 0.0)
      throw UsageError("table file '" + path + "': values must be finite and >= 0");

  if (!expected_fingerprint.empty() &&
      expected_fingerprint != table.vehicle_fingerprint && !allow_mismatch)
    throw TableMismatchError(
        "table '" + path + "' was built for fingerprint " +
        table.vehicle_fingerprint + ", active parameters have " +
        expected_fingerprint + " (pass the override flag to use it anyway)");
  return table;
}

}  // namespace voltroute
