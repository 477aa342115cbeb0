#include "voltroute/propulsion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "voltroute/errors.hpp"

namespace voltroute {

namespace {

constexpr double kFixedPointDamping = 0.5;
constexpr int kFixedPointMaxIters = 200;
constexpr double kMomentumClampFraction = 0.1;  // of hover induced velocity
constexpr double kInducedResidualTol = 1e-8;    // relative to zero-inflow thrust
constexpr double kThrustSolveTol = 1e-6;        // relative to requested thrust
constexpr int kThrustSolveMaxIters = 300;

void check_state(const RotorState& state) {
  if (state.omega < 0.0) throw UsageError("rotor state: omega must be >= 0");
  if (state.v_x < 0.0) throw UsageError("rotor state: v_x must be >= 0");
  if (!std::isfinite(state.omega) || !std::isfinite(state.v_x) ||
      !std::isfinite(state.v_z))
    throw UsageError("rotor state: non-finite component");
}

}  // namespace

RotorModel::RotorModel(const RotorGeometry& geom, const AirProperties& air,
                       const QuadratureSpec& quad)
    : geom_(geom), air_(air), quad_(quad) {
  geom_.validate();
  air_.validate();
  if (quad_.radial_nodes < 2 || quad_.azimuthal_nodes < 4)
    throw UsageError("quadrature: need >= 2 radial and >= 4 azimuthal nodes");

  auto make_nodes = [&](double r_lo, double r_hi) {
    RadialNodes n;
    const int k = quad_.radial_nodes;
    n.dr = (r_hi - r_lo) / k;
    n.r.resize(k);
    n.chord.resize(k);
    n.twist.resize(k);
    for (int i = 0; i < k; ++i) {
      const double r = r_lo + (i + 0.5) * n.dr;
      n.r[i] = r;
      n.chord[i] = geom_.chord(r);
      n.twist[i] = geom_.twist(r);
    }
    return n;
  };
  thrust_nodes_ = make_nodes(geom_.root_radius,
                             geom_.tip_loss_fraction * geom_.tip_radius);
  torque_nodes_ = make_nodes(geom_.root_radius, geom_.tip_radius);

  sin_psi_.resize(quad_.azimuthal_nodes);
  for (int m = 0; m < quad_.azimuthal_nodes; ++m) {
    const double psi =
        (m + 0.5) * 2.0 * std::numbers::pi / quad_.azimuthal_nodes;
    sin_psi_[m] = std::sin(psi);
  }

  // u_pr^2 torque coefficient does not depend on the operating point.
  const double w_q = 0.5 * geom_.blade_count * air_.density * torque_nodes_.dr;
  q2_ = 0.0;
  for (int i = 0; i < quad_.radial_nodes; ++i)
    q2_ += w_q * torque_nodes_.r[i] * torque_nodes_.chord[i] * geom_.lift_slope;
}

// Midpoint sums of the blade-element integrands at fixed (omega, v_x). With
// the small-angle simplification the integrands are polynomial in the
// perpendicular inflow u_pr, so one pass yields thrust and torque for any
// induced velocity:
//   dT = 0.5 N rho c a (theta u_pl^2 - u_pr u_pl)
//   dQ = 0.5 N rho r c (a (theta u_pr u_pl - u_pr^2) + c_d u_pl^2)
RotorModel::LoadCoefficients RotorModel::accumulate(double omega,
                                                    double v_x) const {
  const int m_count = quad_.azimuthal_nodes;
  const double inv_m = 1.0 / m_count;
  LoadCoefficients co{0.0, 0.0, 0.0, 0.0};

  const double w_t = 0.5 * geom_.blade_count * air_.density *
                     geom_.lift_slope * thrust_nodes_.dr * inv_m;
  for (int i = 0; i < quad_.radial_nodes; ++i) {
    const double wr = omega * thrust_nodes_.r[i];
    double sum_upl = 0.0, sum_upl2 = 0.0;
    for (int m = 0; m < m_count; ++m) {
      const double u_pl = wr + v_x * sin_psi_[m];
      sum_upl += u_pl;
      sum_upl2 += u_pl * u_pl;
    }
    const double wc = w_t * thrust_nodes_.chord[i];
    co.t0 += wc * thrust_nodes_.twist[i] * sum_upl2;
    co.t1 += wc * sum_upl;
  }

  const double w_q =
      0.5 * geom_.blade_count * air_.density * torque_nodes_.dr * inv_m;
  for (int i = 0; i < quad_.radial_nodes; ++i) {
    const double wr = omega * torque_nodes_.r[i];
    double sum_upl = 0.0, sum_upl2 = 0.0;
    for (int m = 0; m < m_count; ++m) {
      const double u_pl = wr + v_x * sin_psi_[m];
      sum_upl += u_pl;
      sum_upl2 += u_pl * u_pl;
    }
    const double wrc = w_q * torque_nodes_.r[i] * torque_nodes_.chord[i];
    co.q0 += wrc * geom_.drag_coeff * sum_upl2;
    co.q1 += wrc * geom_.lift_slope * torque_nodes_.twist[i] * sum_upl;
  }
  return co;
}

BladeLoads RotorModel::blade_loads(const RotorState& state,
                                   double induced_velocity) const {
  check_state(state);
  if (induced_velocity < 0.0)
    throw UsageError("blade_loads: induced velocity must be >= 0");

  const LoadCoefficients co = accumulate(state.omega, state.v_x);
  const double u_pr = induced_velocity + state.v_z;
  BladeLoads loads;
  loads.thrust = co.t0 - co.t1 * u_pr;
  loads.torque = co.q0 + co.q1 * u_pr - q2_ * u_pr * u_pr;
  if (!std::isfinite(loads.thrust) || !std::isfinite(loads.torque))
    throw ModelError(
        "blade_loads: non-finite integral (omega=" + std::to_string(state.omega) +
        ", v_x=" + std::to_string(state.v_x) + ", u_pr=" + std::to_string(u_pr) +
        "); check chord/twist tables");
  return loads;
}

RotorLoads RotorModel::solve_induced_with(const LoadCoefficients& co,
                                          double omega, double v_x,
                                          double v_z) const {
  const double disk = geom_.disk_area();
  const double two_rho_a = 2.0 * air_.density * disk;

  auto thrust_of = [&](double v_i) { return co.t0 - co.t1 * (v_i + v_z); };

  // Zero-induced-velocity thrust sets the residual scale and the hover
  // induced-velocity scale used by the descent clamp.
  const double t_zero = thrust_of(0.0);

  // Non-positive blade loading (strong climb inflow at low rotor speed): the
  // momentum balance with v_i >= 0 degenerates to the v_i = 0 boundary.
  if (t_zero <= 0.0) {
    const double u_pr0 = v_z;
    RotorLoads out;
    out.induced_velocity = 0.0;
    out.thrust = t_zero;
    out.torque = co.q0 + co.q1 * u_pr0 - q2_ * u_pr0 * u_pr0;
    out.vortex_ring_flagged = false;
    if (!std::isfinite(out.thrust) || !std::isfinite(out.torque))
      throw ModelError("induced velocity: non-finite loads (omega=" +
                       std::to_string(omega) + ")");
    return out;
  }

  const double v_h = std::sqrt(std::max(t_zero, 1e-9) / two_rho_a);
  const double u_floor = kMomentumClampFraction * std::max(v_h, 1e-6);
  const double tol = kInducedResidualTol * std::max(std::abs(t_zero), 1e-6);

  bool clamped = false;
  auto momentum_speed = [&](double v_i) {
    const double u = std::hypot(v_x, v_z + v_i);
    if (u < u_floor) {
      clamped = true;
      return u_floor;
    }
    return u;
  };
  auto residual = [&](double v_i) {
    return thrust_of(v_i) - two_rho_a * v_i * momentum_speed(v_i);
  };

  double v_i = v_h;
  double res = residual(v_i);
  bool converged = std::abs(res) <= tol;
  for (int it = 0; it < kFixedPointMaxIters && !converged; ++it) {
    const double target =
        thrust_of(v_i) / (two_rho_a * momentum_speed(v_i));
    v_i = std::max(0.0, (1.0 - kFixedPointDamping) * v_i +
                            kFixedPointDamping * target);
    res = residual(v_i);
    converged = std::abs(res) <= tol;
  }

  if (!converged) {
    // Bisection fallback on [0, 3 v_h], widened if the sign change lies
    // outside (strong descent).
    double lo = 0.0, hi = 3.0 * v_h;
    double f_lo = residual(lo), f_hi = residual(hi);
    int widen = 0;
    while (f_lo * f_hi > 0.0 && widen++ < 40) {
      hi *= 2.0;
      f_hi = residual(hi);
    }
    if (f_lo * f_hi > 0.0)
      throw SolverError("induced velocity: no momentum-balance bracket", res);
    for (int it = 0; it < 200 && !converged; ++it) {
      v_i = 0.5 * (lo + hi);
      res = residual(v_i);
      converged = std::abs(res) <= tol;
      if ((res > 0.0) == (f_lo > 0.0)) {
        lo = v_i;
        f_lo = res;
      } else {
        hi = v_i;
      }
    }
    if (!converged)
      throw SolverError("induced velocity: fixed point and bisection failed",
                        res);
  }

  const double u_pr = v_i + v_z;
  RotorLoads out;
  out.induced_velocity = v_i;
  out.thrust = thrust_of(v_i);
  out.torque = co.q0 + co.q1 * u_pr - q2_ * u_pr * u_pr;
  out.vortex_ring_flagged = clamped;
  if (!std::isfinite(out.thrust) || !std::isfinite(out.torque) ||
      !std::isfinite(v_i))
    throw ModelError("induced velocity: non-finite solution (omega=" +
                     std::to_string(omega) + ", v_x=" + std::to_string(v_x) +
                     ", v_z=" + std::to_string(v_z) + ")");
  return out;
}

RotorLoads RotorModel::solve_induced_velocity(const RotorState& state) const {
  check_state(state);
  if (!(state.omega > 0.0))
    throw UsageError("solve_induced_velocity: omega must be > 0");
  const LoadCoefficients co = accumulate(state.omega, state.v_x);
  return solve_induced_with(co, state.omega, state.v_x, state.v_z);
}

OmegaSolution RotorModel::solve_omega_for_thrust(double thrust_req, double v_x,
                                                 double v_z,
                                                 double omega_hint) const {
  if (!(thrust_req > 0.0))
    throw UsageError("solve_omega_for_thrust: thrust must be > 0");
  if (v_x < 0.0) throw UsageError("solve_omega_for_thrust: v_x must be >= 0");

  const double omega_min = 1e-3;
  const double omega_max = geom_.omega_max;

  auto loads_at = [&](double omega) {
    return solve_induced_with(accumulate(omega, v_x), omega, v_x, v_z);
  };

  const double tol = kThrustSolveTol * thrust_req;

  double a, b;
  RotorLoads la, lb;
  if (omega_hint > omega_min && omega_hint < omega_max) {
    a = std::max(omega_min, 0.8 * omega_hint);
    b = std::min(omega_max, 1.25 * omega_hint);
    la = loads_at(a);
    lb = loads_at(b);
    int grow = 0;
    while (la.thrust > thrust_req && a > omega_min && grow++ < 60) {
      a = std::max(omega_min, 0.5 * a);
      la = loads_at(a);
    }
    grow = 0;
    while (lb.thrust < thrust_req && b < omega_max && grow++ < 60) {
      b = std::min(omega_max, 1.6 * b);
      lb = loads_at(b);
    }
  } else {
    a = omega_min;
    b = omega_max;
    la = loads_at(a);
    lb = loads_at(b);
  }

  if (lb.thrust < thrust_req) {
    if (b < omega_max) lb = loads_at(b = omega_max);
    if (lb.thrust < thrust_req) {
      const double t_lo = loads_at(omega_min).thrust;
      throw InfeasibleThrustError(
          "requested thrust " + std::to_string(thrust_req) +
              " N above achievable bracket at omega_max",
          thrust_req, std::min(t_lo, 0.0), lb.thrust);
    }
  }
  if (la.thrust > thrust_req) {
    if (a > omega_min) la = loads_at(a = omega_min);
    if (la.thrust > thrust_req)
      throw InfeasibleThrustError(
          "requested thrust " + std::to_string(thrust_req) +
              " N below the minimum-speed thrust",
          thrust_req, la.thrust, lb.thrust);
  }

  // Illinois regula falsi on f(omega) = T(omega) - thrust_req.
  double fa = la.thrust - thrust_req;
  double fb = lb.thrust - thrust_req;
  if (std::abs(fa) <= tol) return {a, la};
  if (std::abs(fb) <= tol) return {b, lb};

  double omega = b;
  RotorLoads loads = lb;
  double res = fb;
  for (int it = 0; it < kThrustSolveMaxIters; ++it) {
    const double denom = fb - fa;
    omega = (std::abs(denom) > 0.0) ? (a * fb - b * fa) / denom
                                    : 0.5 * (a + b);
    omega = std::clamp(omega, std::min(a, b), std::max(a, b));
    loads = loads_at(omega);
    res = loads.thrust - thrust_req;
    if (std::abs(res) <= tol) return {omega, loads};
    if ((res > 0.0) == (fb > 0.0)) {
      b = omega;
      fb = res;
      fa *= 0.5;  // Illinois step keeps the stale end moving
    } else {
      a = b;
      fa = fb;
      b = omega;
      fb = res;
    }
  }
  throw SolverError("solve_omega_for_thrust: no convergence", res);
}

ElectricalPower electrical_power(double torque, double omega,
                                 const ElectricalParams& elec) {
  if (torque < 0.0 || omega < 0.0)
    throw UsageError("electrical_power: torque and omega must be >= 0");
  const double current = torque / elec.torque_constant + elec.no_load_current;
  const double p_motor =
      torque * omega + current * current * elec.winding_resistance;
  ElectricalPower out;
  out.p_battery = p_motor / elec.esc_efficiency;
  out.i_battery = out.p_battery / elec.battery_voltage;
  return out;
}

HoverPoint hover_performance(const VehicleParams& vehicle,
                             const QuadratureSpec& quad) {
  vehicle.validate();
  const RotorModel model(vehicle.rotor, vehicle.air, quad);
  const double per_rotor =
      vehicle.mass * vehicle.gravity / vehicle.rotor_count;
  const OmegaSolution sol = model.solve_omega_for_thrust(per_rotor, 0.0, 0.0);
  const ElectricalPower ep =
      electrical_power(sol.loads.torque, sol.omega, vehicle.elec);
  HoverPoint hp;
  hp.omega = sol.omega;
  hp.power_total = vehicle.rotor_count * ep.p_battery;
  hp.per_rotor = sol.loads;
  return hp;
}

}  // namespace voltroute
