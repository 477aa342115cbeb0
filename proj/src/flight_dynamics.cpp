#include "voltroute/flight_dynamics.hpp"

#include <cmath>
#include <string>

#include "voltroute/errors.hpp"

namespace voltroute {

RotorInflow rotor_inflow(const BodyState& state, double x_offset) {
  const double c = std::cos(state.theta);
  const double s = std::sin(state.theta);
  RotorInflow in;
  in.v_x = std::abs(state.x_dot * c - state.z_dot * s);
  in.v_z = state.x_dot * s + state.z_dot * c + state.theta_dot * x_offset;
  return in;
}

BodyAcceleration body_acceleration(const BodyState& state,
                                   std::span<const double> thrusts,
                                   const VehicleParams& vehicle) {
  if (thrusts.size() != static_cast<size_t>(vehicle.rotor_count))
    throw UsageError("body_acceleration: expected " +
                     std::to_string(vehicle.rotor_count) + " thrusts");
  double thrust_sum = 0.0;
  double pitch_torque = 0.0;
  for (size_t j = 0; j < thrusts.size(); ++j) {
    if (!std::isfinite(thrusts[j]))
      throw UsageError("body_acceleration: non-finite thrust");
    thrust_sum += thrusts[j];
    pitch_torque += vehicle.arms[j].pitch_arm * thrusts[j];
  }
  const double drag =
      vehicle.body_drag_coeff * state.x_dot * std::abs(state.x_dot);
  BodyAcceleration acc;
  acc.x_ddot = (thrust_sum * std::sin(state.theta) - drag) / vehicle.mass;
  acc.z_ddot =
      thrust_sum * std::cos(state.theta) / vehicle.mass - vehicle.gravity;
  acc.theta_ddot = pitch_torque / vehicle.pitch_inertia;
  return acc;
}

ThrustAttitude inverse_dynamics(double x_ddot_cmd, double z_ddot_cmd,
                                double x_dot, double z_dot,
                                const VehicleParams& vehicle) {
  (void)z_dot;  // vertical body drag is neglected
  const double f_x =
      vehicle.mass * x_ddot_cmd + vehicle.body_drag_coeff * x_dot * std::abs(x_dot);
  const double f_z = vehicle.mass * (z_ddot_cmd + vehicle.gravity);
  if (!(f_z > 0.0))
    throw InfeasibleCommandError(
        "inverse_dynamics: vertical force demand is non-positive (free-fall "
        "command, z_ddot=" + std::to_string(z_ddot_cmd) + ")");
  ThrustAttitude out;
  out.theta = std::atan2(f_x, f_z);
  out.thrust_total = std::hypot(f_x, f_z);
  if (std::abs(out.theta) > vehicle.limits.theta_max)
    throw LimitViolationError(
        "inverse_dynamics: required pitch " + std::to_string(out.theta) +
        " rad exceeds theta_max " + std::to_string(vehicle.limits.theta_max));
  return out;
}

}  // namespace voltroute
