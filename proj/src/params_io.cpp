#include "voltroute/params_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "voltroute/errors.hpp"

namespace voltroute {

namespace {

using nlohmann::json;

json table_to_json(const LinearTable& table) {
  json arr = json::array();
  for (const auto& [x, y] : table.knots()) arr.push_back({x, y});
  return arr;
}

LinearTable table_from_json(const json& arr, const std::string& name) {
  if (!arr.is_array() || arr.empty())
    throw UsageError("params: '" + name + "' must be a non-empty array of [x, value] pairs");
  std::vector<std::pair<double, double>> knots;
  knots.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2)
      throw UsageError("params: '" + name + "' entries must be [x, value] pairs");
    knots.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return LinearTable(std::move(knots));
}

template <typename T>
T require(const json& doc, const std::string& key) {
  if (!doc.contains(key))
    throw UsageError("params: missing field '" + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError("params: bad field '" + key + "': " + e.what());
  }
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

json vehicle_to_json(const VehicleParams& v) {
  json arms = json::array();
  for (const auto& a : v.arms)
    arms.push_back({{"pitch_arm", a.pitch_arm}, {"x_offset", a.x_offset}});
  return json{
      {"schema", kVehicleSchema},
      {"mass", v.mass},
      {"gravity", v.gravity},
      {"rotor_count", v.rotor_count},
      {"body_drag_coeff", v.body_drag_coeff},
      {"pitch_inertia", v.pitch_inertia},
      {"arms", arms},
      {"rotor",
       {{"blade_count", v.rotor.blade_count},
        {"root_radius", v.rotor.root_radius},
        {"tip_radius", v.rotor.tip_radius},
        {"chord", table_to_json(v.rotor.chord)},
        {"twist", table_to_json(v.rotor.twist)},
        {"lift_slope", v.rotor.lift_slope},
        {"drag_coeff", v.rotor.drag_coeff},
        {"tip_loss_fraction", v.rotor.tip_loss_fraction},
        {"omega_max", v.rotor.omega_max}}},
      {"air", {{"density", v.air.density}}},
      {"electrical",
       {{"torque_constant", v.elec.torque_constant},
        {"no_load_current", v.elec.no_load_current},
        {"winding_resistance", v.elec.winding_resistance},
        {"esc_efficiency", v.elec.esc_efficiency},
        {"battery_voltage", v.elec.battery_voltage}}},
      {"limits",
       {{"v_max_horiz", v.limits.v_max_horiz},
        {"v_max_climb", v.limits.v_max_climb},
        {"v_max_descent", v.limits.v_max_descent},
        {"a_max", v.limits.a_max},
        {"theta_max", v.limits.theta_max}}}};
}

VehicleParams vehicle_from_json(const json& doc) {
  if (!doc.is_object()) throw UsageError("params: document must be a JSON object");
  if (doc.contains("schema") && doc.at("schema") != kVehicleSchema)
    throw UsageError("params: unsupported schema '" +
                     doc.at("schema").get<std::string>() + "'");
  VehicleParams v;
  v.mass = require<double>(doc, "mass");
  v.gravity = doc.value("gravity", 9.81);
  v.rotor_count = require<int>(doc, "rotor_count");
  v.body_drag_coeff = require<double>(doc, "body_drag_coeff");
  v.pitch_inertia = require<double>(doc, "pitch_inertia");

  const json& arms = require<json>(doc, "arms");
  v.arms.clear();
  for (const auto& a : arms)
    v.arms.push_back({require<double>(a, "pitch_arm"), require<double>(a, "x_offset")});

  const json& rotor = require<json>(doc, "rotor");
  v.rotor.blade_count = require<int>(rotor, "blade_count");
  v.rotor.root_radius = require<double>(rotor, "root_radius");
  v.rotor.tip_radius = require<double>(rotor, "tip_radius");
  v.rotor.chord = table_from_json(require<json>(rotor, "chord"), "rotor.chord");
  v.rotor.twist = table_from_json(require<json>(rotor, "twist"), "rotor.twist");
  v.rotor.lift_slope = require<double>(rotor, "lift_slope");
  v.rotor.drag_coeff = require<double>(rotor, "drag_coeff");
  v.rotor.tip_loss_fraction = rotor.value("tip_loss_fraction", 0.97);
  v.rotor.omega_max = rotor.value("omega_max", 1200.0);

  v.air.density = require<double>(require<json>(doc, "air"), "density");

  const json& elec = require<json>(doc, "electrical");
  v.elec.torque_constant = require<double>(elec, "torque_constant");
  v.elec.no_load_current = require<double>(elec, "no_load_current");
  v.elec.winding_resistance = require<double>(elec, "winding_resistance");
  v.elec.esc_efficiency = require<double>(elec, "esc_efficiency");
  v.elec.battery_voltage = require<double>(elec, "battery_voltage");

  const json& limits = require<json>(doc, "limits");
  v.limits.v_max_horiz = require<double>(limits, "v_max_horiz");
  v.limits.v_max_climb = require<double>(limits, "v_max_climb");
  v.limits.v_max_descent = require<double>(limits, "v_max_descent");
  v.limits.a_max = require<double>(limits, "a_max");
  v.limits.theta_max = require<double>(limits, "theta_max");

  v.validate();
  return v;
}

VehicleParams load_vehicle_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open parameter file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw UsageError("parameter file '" + path + "' is not valid JSON: " + e.what());
  }
  return vehicle_from_json(doc);
}

void save_vehicle_params(const VehicleParams& vehicle, const std::string& path) {
  vehicle.validate();
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write parameter file: " + path);
  out << vehicle_to_json(vehicle).dump(2) << "\n";
}

std::string vehicle_fingerprint(const VehicleParams& vehicle) {
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  const std::string canonical = vehicle_to_json(vehicle).dump();
  std::ostringstream hex;
  hex << std::hex << fnv1a64(canonical);
  return hex.str();
}

}  // namespace voltroute
