#pragma once

#include <string>

#include "voltroute/params_io.hpp"
#include "voltroute/vehicle.hpp"

namespace voltroute::testing {

inline std::string params_path() {
  return std::string(VOLTROUTE_PARAMS_DIR) + "/octorotor.json";
}

// The shipped default vehicle, loaded once.
inline const VehicleParams& default_vehicle() {
  static const VehicleParams vehicle = load_vehicle_params(params_path());
  return vehicle;
}

}  // namespace voltroute::testing
