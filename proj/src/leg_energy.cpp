#include "voltroute/leg_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "voltroute/errors.hpp"
#include "voltroute/flight_dynamics.hpp"

namespace voltroute {

namespace {

// Path speed, position, and acceleration of a trapezoidal profile at time t.
struct PathPoint {
  double s, v, a;
};

struct PathProfile {
  double accel = 0.0;
  double cruise_v = 0.0;
  double t_accel = 0.0;
  double t_cruise = 0.0;  // 0 for triangular
  double length = 0.0;
  double duration() const { return 2.0 * t_accel + t_cruise; }

  PathPoint at(double t) const {
    const double total = duration();
    if (t <= 0.0) return {0.0, 0.0, accel};
    if (t < t_accel) return {0.5 * accel * t * t, accel * t, accel};
    if (t < t_accel + t_cruise) {
      const double s0 = 0.5 * accel * t_accel * t_accel;
      return {s0 + cruise_v * (t - t_accel), cruise_v, 0.0};
    }
    if (t < total) {
      const double td = total - t;
      return {length - 0.5 * accel * td * td, accel * td, -accel};
    }
    return {length, 0.0, 0.0};
  }
};

void validate_leg(const LegDisplacement& leg) {
  if (!std::isfinite(leg.x_f) || !std::isfinite(leg.z_f))
    throw UsageError("leg: displacements must be finite");
  if (leg.x_f < 0.0) throw UsageError("leg: x_f must be >= 0");
}

}  // namespace

TrajectoryProfile generate_profile(const LegDisplacement& leg,
                                   const MotionLimits& limits, double dt) {
  validate_leg(leg);
  limits.validate();
  if (!(dt > 0.0)) throw UsageError("generate_profile: dt must be > 0");

  TrajectoryProfile out;
  const double length = std::hypot(leg.x_f, leg.z_f);
  if (length == 0.0) return out;

  const double cx = leg.x_f / length;
  const double cz = leg.z_f / length;

  // Path speed cap: the tightest componentwise limit scaled by direction
  // cosine; the climb or descent limit is picked by the sign of z_f.
  double v_cap = std::numeric_limits<double>::infinity();
  if (cx > 1e-12) v_cap = std::min(v_cap, limits.v_max_horiz / cx);
  if (std::abs(cz) > 1e-12) {
    const double v_vert = (leg.z_f > 0.0) ? limits.v_max_climb
                                          : limits.v_max_descent;
    v_cap = std::min(v_cap, v_vert / std::abs(cz));
  }

  PathProfile path;
  path.accel = limits.a_max;
  path.length = length;
  const double d_accel = v_cap * v_cap / (2.0 * limits.a_max);
  if (2.0 * d_accel >= length) {
    // Triangular: cruise speed never reached.
    path.cruise_v = std::sqrt(length * limits.a_max);
    path.t_accel = path.cruise_v / limits.a_max;
    path.t_cruise = 0.0;
  } else {
    path.cruise_v = v_cap;
    path.t_accel = v_cap / limits.a_max;
    path.t_cruise = (length - 2.0 * d_accel) / v_cap;
  }
  out.duration = path.duration();

  const int whole_steps = static_cast<int>(std::floor(out.duration / dt));
  out.samples.reserve(whole_steps + 2);
  for (int k = 0; k <= whole_steps; ++k) {
    const double t = k * dt;
    const PathPoint p = path.at(t);
    out.samples.push_back({t, p.s * cx, p.s * cz, p.v * cx, p.v * cz,
                           p.a * cx, p.a * cz});
  }
  if (out.samples.back().t < out.duration - 1e-12)
    out.samples.push_back(
        {out.duration, length * cx, length * cz, 0.0, 0.0, 0.0, 0.0});
  return out;
}

LegResult simulate_leg(const LegDisplacement& leg, const VehicleParams& vehicle,
                       double dt, const QuadratureSpec& quad, LegTrace* trace) {
  vehicle.validate();
  const TrajectoryProfile profile = generate_profile(leg, vehicle.limits, dt);

  LegResult result;
  result.duration = profile.duration;
  if (profile.samples.empty()) return result;

  const RotorModel model(vehicle.rotor, vehicle.air, quad);
  const int n = static_cast<int>(profile.samples.size());
  std::vector<double> power(n, 0.0);

  double omega_hint = 0.0;
  for (int k = 0; k < n; ++k) {
    const TrajectorySample& s = profile.samples[k];
    try {
      const ThrustAttitude cmd =
          inverse_dynamics(s.ax, s.az, s.vx, s.vz, vehicle);
      BodyState body;
      body.x_dot = s.vx;
      body.z_dot = s.vz;
      body.theta = cmd.theta;
      const RotorInflow inflow = rotor_inflow(body, 0.0);
      const double per_rotor = cmd.thrust_total / vehicle.rotor_count;
      const OmegaSolution sol =
          model.solve_omega_for_thrust(per_rotor, inflow.v_x, inflow.v_z,
                                       omega_hint);
      omega_hint = sol.omega;
      const ElectricalPower ep =
          electrical_power(sol.loads.torque, sol.omega, vehicle.elec);
      power[k] = vehicle.rotor_count * ep.p_battery;

      result.peak_omega = std::max(result.peak_omega, sol.omega);
      result.peak_theta = std::max(result.peak_theta, std::abs(cmd.theta));
      result.peak_power = std::max(result.peak_power, power[k]);
      if (sol.loads.vortex_ring_flagged)
        result.regime_warnings.push_back({k, s.t});
      if (trace) {
        trace->t.push_back(s.t);
        trace->x.push_back(s.x);
        trace->z.push_back(s.z);
        trace->theta.push_back(cmd.theta);
        trace->omega.push_back(sol.omega);
        trace->p_battery.push_back(power[k]);
      }
    } catch (const InfeasibleThrustError& e) {
      throw InfeasibleThrustError(
          "leg (" + std::to_string(leg.x_f) + ", " + std::to_string(leg.z_f) +
              ") sample " + std::to_string(k) + ": " + e.what(),
          e.thrust_requested, e.bracket_min, e.bracket_max);
    } catch (const LimitViolationError& e) {
      throw LimitViolationError("leg (" + std::to_string(leg.x_f) + ", " +
                                std::to_string(leg.z_f) + ") sample " +
                                std::to_string(k) + ": " + e.what());
    } catch (const InfeasibleCommandError& e) {
      throw InfeasibleCommandError("leg (" + std::to_string(leg.x_f) + ", " +
                                   std::to_string(leg.z_f) + ") sample " +
                                   std::to_string(k) + ": " + e.what());
    }
  }

  double energy = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    const double step = profile.samples[k + 1].t - profile.samples[k].t;
    energy += 0.5 * (power[k] + power[k + 1]) * step;
  }
  result.energy = energy;
  return result;
}

double hover_energy(const VehicleParams& vehicle, double dwell_s) {
  if (dwell_s < 0.0) throw UsageError("hover_energy: dwell must be >= 0");
  if (dwell_s == 0.0) return 0.0;
  return hover_performance(vehicle).power_total * dwell_s;
}

}  // namespace voltroute
