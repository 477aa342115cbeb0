#pragma once

#include <span>

#include "voltroute/vehicle.hpp"

namespace voltroute {

// Planar rigid-body state in the global frame: X horizontal, Z up, theta the
// pitch angle.
struct BodyState {
  double x = 0.0;
  double z = 0.0;
  double x_dot = 0.0;
  double z_dot = 0.0;
  double theta = 0.0;
  double theta_dot = 0.0;
};

// In-plane and perpendicular airspeed at one rotor hub, expressed in the
// rotor frame. v_x is a magnitude (the rotor response is symmetric in the
// planar flow direction).
struct RotorInflow {
  double v_x = 0.0;
  double v_z = 0.0;
};

struct BodyAcceleration {
  double x_ddot = 0.0;
  double z_ddot = 0.0;
  double theta_ddot = 0.0;
};

// Total thrust and pitch realizing a commanded planar acceleration.
struct ThrustAttitude {
  double thrust_total = 0.0;  // N
  double theta = 0.0;         // rad
};

// Rotor-hub velocity components from the body state (x_offset is the rotor's
// body-frame x position, entering through the pitch rate).
RotorInflow rotor_inflow(const BodyState& state, double x_offset);

// Planar equations of motion: thrust along body z, quadratic horizontal body
// drag, thrust-difference pitch torque.
BodyAcceleration body_acceleration(const BodyState& state,
                                   std::span<const double> thrusts,
                                   const VehicleParams& vehicle);

// Quasi-static inverse: total thrust and pitch producing the commanded
// acceleration at the given velocity. Throws InfeasibleCommandError when the
// vertical force demand is non-positive and LimitViolationError when the
// required pitch exceeds theta_max.
ThrustAttitude inverse_dynamics(double x_ddot_cmd, double z_ddot_cmd,
                                double x_dot, double z_dot,
                                const VehicleParams& vehicle);

}  // namespace voltroute
