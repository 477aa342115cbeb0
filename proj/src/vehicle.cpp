#include "voltroute/vehicle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "voltroute/errors.hpp"

namespace voltroute {

double RotorGeometry::disk_area() const {
  return std::numbers::pi * tip_radius * tip_radius;
}

void RotorGeometry::validate() const {
  if (blade_count < 2) throw UsageError("rotor: blade_count must be >= 2");
  if (!(root_radius > 0.0) || !(root_radius < tip_radius))
    throw UsageError("rotor: need 0 < root_radius < tip_radius");
  if (!(lift_slope > 0.0)) throw UsageError("rotor: lift_slope must be > 0");
  if (drag_coeff < 0.0) throw UsageError("rotor: drag_coeff must be >= 0");
  if (!(tip_loss_fraction > 0.0) || tip_loss_fraction > 1.0)
    throw UsageError("rotor: tip_loss_fraction must be in (0, 1]");
  if (!(omega_max > 0.0)) throw UsageError("rotor: omega_max must be > 0");
  if (chord.empty() || twist.empty())
    throw UsageError("rotor: chord and twist tables are required");
  // Tables must cover the blade span; LinearTable clamps outside its knots,
  // so require knots to reach both ends.
  const double tol = 1e-9;
  if (chord.x_min() > root_radius + tol || chord.x_max() < tip_radius - tol)
    throw UsageError("rotor: chord table must cover [root_radius, tip_radius]");
  if (twist.x_min() > root_radius + tol || twist.x_max() < tip_radius - tol)
    throw UsageError("rotor: twist table must cover [root_radius, tip_radius]");
  for (const auto& [r, c] : chord.knots())
    if (!(c > 0.0)) throw UsageError("rotor: chord values must be > 0");
}

void AirProperties::validate() const {
  if (!(density > 0.0)) throw UsageError("air: density must be > 0");
}

void ElectricalParams::validate() const {
  if (!(torque_constant > 0.0))
    throw UsageError("electrical: torque_constant must be > 0");
  if (no_load_current < 0.0)
    throw UsageError("electrical: no_load_current must be >= 0");
  if (winding_resistance < 0.0)
    throw UsageError("electrical: winding_resistance must be >= 0");
  if (!(esc_efficiency > 0.0) || esc_efficiency > 1.0)
    throw UsageError("electrical: esc_efficiency must be in (0, 1]");
  if (!(battery_voltage > 0.0))
    throw UsageError("electrical: battery_voltage must be > 0");
}

void MotionLimits::validate() const {
  if (!(v_max_horiz > 0.0) || !(v_max_climb > 0.0) || !(v_max_descent > 0.0) ||
      !(a_max > 0.0) || !(theta_max > 0.0))
    throw UsageError("limits: all motion limits must be > 0");
  if (theta_max >= std::numbers::pi / 2.0)
    throw UsageError("limits: theta_max must be < pi/2");
}

void VehicleParams::validate() const {
  if (!(mass > 0.0)) throw UsageError("vehicle: mass must be > 0");
  if (!(gravity > 0.0)) throw UsageError("vehicle: gravity must be > 0");
  if (rotor_count < 4) throw UsageError("vehicle: rotor_count must be >= 4");
  if (body_drag_coeff < 0.0)
    throw UsageError("vehicle: body_drag_coeff must be >= 0");
  if (!(pitch_inertia > 0.0))
    throw UsageError("vehicle: pitch_inertia must be > 0");
  if (arms.size() != static_cast<size_t>(rotor_count))
    throw UsageError("vehicle: arms array must have rotor_count entries, got " +
                     std::to_string(arms.size()));
  rotor.validate();
  air.validate();
  elec.validate();
  limits.validate();
}

}  // namespace voltroute
