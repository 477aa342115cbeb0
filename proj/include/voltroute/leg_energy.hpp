#pragma once

#include <vector>

#include "voltroute/propulsion.hpp"
#include "voltroute/vehicle.hpp"

namespace voltroute {

// A waypoint pair reduced to horizontal distance and signed vertical
// displacement; every leg is flown in the vertical plane containing both
// endpoints.
struct LegDisplacement {
  double x_f = 0.0;  // m, >= 0
  double z_f = 0.0;  // m, signed (+ climb)
};

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0, z = 0.0;
  double vx = 0.0, vz = 0.0;
  double ax = 0.0, az = 0.0;
};

// Rest-to-rest straight-line motion with a trapezoidal speed profile along
// the path; triangular when the leg is too short to reach cruise speed.
struct TrajectoryProfile {
  double duration = 0.0;
  std::vector<TrajectorySample> samples;
};

struct RegimeWarning {
  int sample_index = 0;
  double time = 0.0;
};

struct LegResult {
  double energy = 0.0;    // J, battery side
  double duration = 0.0;  // s
  double peak_omega = 0.0;
  double peak_theta = 0.0;
  double peak_power = 0.0;
  std::vector<RegimeWarning> regime_warnings;
};

// Per-sample pipeline outputs, populated on request for plotting.
struct LegTrace {
  std::vector<double> t, x, z, theta, omega, p_battery;
};

TrajectoryProfile generate_profile(const LegDisplacement& leg,
                                   const MotionLimits& limits, double dt);

// Runs the full inverse-dynamics / rotor / electrical chain along the leg's
// profile and integrates battery power. Deterministic for fixed inputs.
LegResult simulate_leg(const LegDisplacement& leg, const VehicleParams& vehicle,
                       double dt, const QuadratureSpec& quad = {},
                       LegTrace* trace = nullptr);

// Battery energy to hover for the given dwell time. Kept separate from leg
// costs: an identical hover at every waypoint cannot change the optimal
// order.
double hover_energy(const VehicleParams& vehicle, double dwell_s);

inline constexpr double kDefaultTimeStep = 0.02;  // s

}  // namespace voltroute
