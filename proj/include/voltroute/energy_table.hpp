#pragma once

#include <string>
#include <vector>

#include "voltroute/leg_energy.hpp"
#include "voltroute/vehicle.hpp"

namespace voltroute {

// Regular (X_f, Z_f) grid. Node i along X sits at x_min + i * x_step; the
// effective upper edges are rounded up to whole steps so the requested range
// is always covered.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 120.0;
  double x_step = 2.0;
  double z_min = -60.0;
  double z_max = 60.0;
  double z_step = 2.0;

  int nx() const;
  int nz() const;
  double x_at(int i) const { return x_min + i * x_step; }
  double z_at(int j) const { return z_min + j * z_step; }
  double x_hull_max() const { return x_at(nx() - 1); }
  double z_hull_max() const { return z_at(nz() - 1); }
  void validate() const;
};

// Precomputed leg energies over the grid, with enough metadata to detect
// reuse against the wrong vehicle.
struct EnergyTable {
  GridSpec spec;
  std::vector<double> values;  // row-major, index ix * nz + iz, J
  std::string vehicle_fingerprint;
  double dt = kDefaultTimeStep;
  std::string code_version;

  double at(int ix, int iz) const { return values[ix * spec.nz() + iz]; }
};

// Simulates every grid cell. threads == 1 runs the serial reference loop;
// threads == 0 uses all available workers. Output is identical for any
// thread count (cells are independent).
EnergyTable build_table(const GridSpec& spec, const VehicleParams& vehicle,
                        double dt = kDefaultTimeStep, int threads = 0);

// Bilinear interpolation over the four surrounding nodes; exact at nodes.
// Throws TableRangeError outside the grid hull (no extrapolation).
double interpolate(const EnergyTable& table, const LegDisplacement& leg);

void save_table(const EnergyTable& table, const std::string& path);

// `expected_fingerprint`, when non-empty, is checked against the stored one;
// mismatch throws TableMismatchError unless allow_mismatch is set.
EnergyTable load_table(const std::string& path,
                       const std::string& expected_fingerprint = {},
                       bool allow_mismatch = false);

}  // namespace voltroute
