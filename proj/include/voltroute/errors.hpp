#pragma once

#include <stdexcept>
#include <string>

namespace voltroute {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: malformed files, invalid parameter values, size guards.
struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Non-finite model evaluation (degenerate geometry tables and the like).
struct ModelError : Error {
  explicit ModelError(const std::string& msg) : Error(msg) {}
};

// Iterative solver failed to converge; carries the last residual.
struct SolverError : Error {
  SolverError(const std::string& msg, double residual)
      : Error(msg), last_residual(residual) {}
  double last_residual;
};

// Requested thrust outside the achievable bracket [0, T(omega_max)].
struct InfeasibleThrustError : Error {
  InfeasibleThrustError(const std::string& msg, double requested, double t_min,
                        double t_max)
      : Error(msg), thrust_requested(requested), bracket_min(t_min),
        bracket_max(t_max) {}
  double thrust_requested;
  double bracket_min;
  double bracket_max;
};

// Commanded acceleration cannot be realized (free-fall demand, F_z <= 0).
struct InfeasibleCommandError : Error {
  explicit InfeasibleCommandError(const std::string& msg) : Error(msg) {}
};

// A motion limit was violated (pitch beyond theta_max etc.).
struct LimitViolationError : Error {
  explicit LimitViolationError(const std::string& msg) : Error(msg) {}
};

// Lookup outside the energy-table hull; carries the hull bounds.
struct TableRangeError : Error {
  TableRangeError(const std::string& msg, double x_min, double x_max,
                  double z_min, double z_max)
      : Error(msg), hull_x_min(x_min), hull_x_max(x_max), hull_z_min(z_min),
        hull_z_max(z_max) {}
  double hull_x_min, hull_x_max, hull_z_min, hull_z_max;
};

// Table was built for a different parameter file.
struct TableMismatchError : Error {
  explicit TableMismatchError(const std::string& msg) : Error(msg) {}
};

}  // namespace voltroute
