#pragma once

#include <string>

#include <json.hpp>

#include "voltroute/vehicle.hpp"

namespace voltroute {

inline constexpr const char* kCodeVersion = "0.1.0";
inline constexpr const char* kVehicleSchema = "voltroute-vehicle/1";

nlohmann::json vehicle_to_json(const VehicleParams& vehicle);
VehicleParams vehicle_from_json(const nlohmann::json& doc);

VehicleParams load_vehicle_params(const std::string& path);
void save_vehicle_params(const VehicleParams& vehicle, const std::string& path);

// Hash of the canonical JSON form of the parameters; stored in energy tables
// so a table cannot silently be reused with a different vehicle.
std::string vehicle_fingerprint(const VehicleParams& vehicle);

}  // namespace voltroute
