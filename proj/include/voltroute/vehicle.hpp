#pragma once

#include <cstdint>
#include <vector>

#include "voltroute/linear_table.hpp"

namespace voltroute {

// Geometry of one rotor. Chord and twist are piecewise-linear in the blade
// radial coordinate and must be defined on [root_radius, tip_radius].
struct RotorGeometry {
  int blade_count = 2;
  double root_radius = 0.03;        // m
  double tip_radius = 0.19;         // m
  LinearTable chord;                // m over r
  LinearTable twist;                // rad over r
  double lift_slope = 5.7;          // 1/rad
  double drag_coeff = 0.012;
  double tip_loss_fraction = 0.97;  // thrust integration stops at this * R
  double omega_max = 1200.0;        // rad/s, motor/structural speed limit

  double disk_area() const;
  void validate() const;
};

struct AirProperties {
  double density = 1.225;  // kg/m^3

  void validate() const;
};

// Lumped motor + ESC + battery electrical parameters.
struct ElectricalParams {
  double torque_constant = 0.024;   // N*m/A
  double no_load_current = 0.6;     // A
  double winding_resistance = 0.12; // ohm
  double esc_efficiency = 0.95;
  double battery_voltage = 22.2;    // V

  void validate() const;
};

struct MotionLimits {
  double v_max_horiz = 10.0;   // m/s
  double v_max_climb = 3.0;    // m/s
  double v_max_descent = 2.0;  // m/s (magnitude)
  double a_max = 2.0;          // m/s^2 along the path
  double theta_max = 0.5;      // rad

  void validate() const;
};

// Per-rotor placement used by the pitch channel: moment arm about the pitch
// axis and rotor x-offset in the body frame.
struct RotorArm {
  double pitch_arm = 0.0;  // m, L_theta
  double x_offset = 0.0;   // m
};

struct VehicleParams {
  double mass = 11.0;             // kg
  double gravity = 9.81;          // m/s^2
  int rotor_count = 8;
  double body_drag_coeff = 0.35;  // kg/m, horizontal quadratic drag
  double pitch_inertia = 0.45;    // kg*m^2
  std::vector<RotorArm> arms;     // length rotor_count
  RotorGeometry rotor;
  AirProperties air;
  ElectricalParams elec;
  MotionLimits limits;

  void validate() const;
};

}  // namespace voltroute
