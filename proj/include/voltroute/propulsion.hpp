#pragma once

#include <vector>

#include "voltroute/vehicle.hpp"

namespace voltroute {

// Operating point of a single rotor. v_x is the rotor-plane-parallel airspeed
// magnitude; v_z is the plane-perpendicular airspeed, positive for climb-like
// inflow.
struct RotorState {
  double omega = 0.0;  // rad/s, >= 0
  double v_x = 0.0;    // m/s, >= 0
  double v_z = 0.0;    // m/s, signed
};

struct BladeLoads {
  double thrust = 0.0;  // N
  double torque = 0.0;  // N*m
};

struct RotorLoads {
  double thrust = 0.0;            // N
  double torque = 0.0;            // N*m
  double induced_velocity = 0.0;  // m/s, >= 0
  // Set when the momentum denominator had to be clamped at any point of the
  // solve (vortex-ring neighborhood, momentum theory degraded there).
  bool vortex_ring_flagged = false;
};

struct ElectricalPower {
  double p_battery = 0.0;  // W
  double i_battery = 0.0;  // A
};

struct QuadratureSpec {
  int radial_nodes = 40;
  int azimuthal_nodes = 36;
};

struct OmegaSolution {
  double omega = 0.0;  // rad/s
  RotorLoads loads;
};

struct HoverPoint {
  double omega = 0.0;        // rad/s per rotor
  double power_total = 0.0;  // W, all rotors, battery side
  RotorLoads per_rotor;
};

// Single-rotor aerodynamic + electrical model. Construction precomputes the
// midpoint quadrature nodes for the blade integrals; all methods are const
// and safe to call concurrently.
class RotorModel {
 public:
  RotorModel(const RotorGeometry& geom, const AirProperties& air,
             const QuadratureSpec& quad = {});

  // Thrust and torque from the blade-element integrals at a prescribed
  // induced velocity.
  BladeLoads blade_loads(const RotorState& state, double induced_velocity) const;

  // Couples the blade-element loads with momentum theory and solves for the
  // induced velocity (damped fixed point, bisection fallback).
  RotorLoads solve_induced_velocity(const RotorState& state) const;

  // Inverse map: rotor speed producing the requested thrust at the given
  // inflow, to 1e-6 relative thrust tolerance. omega_hint, when positive,
  // seeds the bracket (warm starts along a trajectory).
  OmegaSolution solve_omega_for_thrust(double thrust_req, double v_x,
                                       double v_z,
                                       double omega_hint = 0.0) const;

  const RotorGeometry& geometry() const { return geom_; }
  const AirProperties& air() const { return air_; }
  const QuadratureSpec& quadrature() const { return quad_; }

 private:
  // T(u_pr) = t0 - t1*u_pr, Q(u_pr) = q0 + q1*u_pr - q2*u_pr^2 at fixed
  // (omega, v_x); u_pr = v_i + v_z. The coefficients are the azimuthal and
  // radial midpoint sums of the blade-element integrands.
  struct LoadCoefficients {
    double t0, t1, q0, q1;
  };
  LoadCoefficients accumulate(double omega, double v_x) const;
  RotorLoads solve_induced_with(const LoadCoefficients& co, double omega,
                                double v_x, double v_z) const;

  RotorGeometry geom_;
  AirProperties air_;
  QuadratureSpec quad_;

  struct RadialNodes {
    std::vector<double> r, chord, twist;
    double dr = 0.0;
  };
  RadialNodes thrust_nodes_;  // [R0, tip_loss_fraction * R]
  RadialNodes torque_nodes_;  // [R0, R]
  std::vector<double> sin_psi_;
  double q2_ = 0.0;  // u_pr^2 torque coefficient, geometry-only
};

// Battery-side power for a rotor shaft load: copper and idle losses on top of
// mechanical power, divided by ESC efficiency.
ElectricalPower electrical_power(double torque, double omega,
                                 const ElectricalParams& elec);

// Rotor speed and total battery power sustaining weight at zero airspeed.
HoverPoint hover_performance(const VehicleParams& vehicle,
                             const QuadratureSpec& quad = {});

}  // namespace voltroute
