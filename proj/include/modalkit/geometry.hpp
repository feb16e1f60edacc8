#pragma once

// Test geometry: the 49-point, two-pedestal layout with its interface
// groups (foundation, grout plate, steel plate, gearbox housing, piping).
// Group and pedestal membership are load-bearing for analysis; coordinates
// are for display and animation export.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "modalkit/rig_model.hpp"

namespace modalkit {

enum class PointGroup { foundation, grout_plate, steel_plate, gearbox, piping };

inline std::string to_string(PointGroup g) {
  switch (g) {
    case PointGroup::foundation: return "foundation";
    case PointGroup::grout_plate: return "grout_plate";
    case PointGroup::steel_plate: return "steel_plate";
    case PointGroup::gearbox: return "gearbox";
    case PointGroup::piping: return "piping";
  }
  return "?";
}

inline PointGroup group_from_string(const std::string& s) {
  if (s == "foundation") return PointGroup::foundation;
  if (s == "grout_plate") return PointGroup::grout_plate;
  if (s == "steel_plate") return PointGroup::steel_plate;
  if (s == "gearbox") return PointGroup::gearbox;
  if (s == "piping") return PointGroup::piping;
  throw std::invalid_argument("unknown group '" + s + "'");
}

struct GeometryPoint {
  int id = 0;
  std::string label;
  double x = 0.0, y = 0.0, z = 0.0;
  PointGroup group = PointGroup::gearbox;
  int pedestal = 0;  // 1 or 2; 0 = none (piping)
};

struct GeometryModel {
  std::vector<GeometryPoint> points;

  const GeometryPoint* find(int id) const {
    for (const auto& p : points)
      if (p.id == id) return &p;
    return nullptr;
  }

  void validate() const {
    std::map<int, int> seen;
    for (const auto& p : points) {
      if (++seen[p.id] > 1)
        throw std::invalid_argument("duplicate point " + std::to_string(p.id));
      if (p.group == PointGroup::piping) {
        if (p.pedestal != 0)
          throw std::invalid_argument("piping point " + std::to_string(p.id) +
                                      " must have no pedestal");
      } else if (p.pedestal != 1 && p.pedestal != 2) {
        throw std::invalid_argument("point " + std::to_string(p.id) +
                                    " needs pedestal 1 or 2");
      }
    }
  }
};

inline GeometryModel geometry_from_json(const nlohmann::json& j) {
  GeometryModel geo;
  for (const auto& p : j.at("points")) {
    GeometryPoint gp;
    gp.id = p.at("id").get<int>();
    gp.label = p.value("label", "");
    const auto& pos = p.at("position");
    gp.x = pos.at(0).get<double>();
    gp.y = pos.at(1).get<double>();
    gp.z = pos.at(2).get<double>();
    gp.group = group_from_string(p.at("group").get<std::string>());
    if (p.contains("pedestal") && !p.at("pedestal").is_null())
      gp.pedestal = p.at("pedestal").get<int>();
    geo.points.push_back(gp);
  }
  geo.validate();
  return geo;
}

inline nlohmann::json geometry_to_json(const GeometryModel& geo) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : geo.points) {
    nlohmann::json jp;
    jp["id"] = p.id;
    if (!p.label.empty()) jp["label"] = p.label;
    jp["position"] = {p.x, p.y, p.z};
    jp["group"] = to_string(p.group);
    if (p.group == PointGroup::piping)
      jp["pedestal"] = nullptr;
    else
      jp["pedestal"] = p.pedestal;
    points.push_back(jp);
  }
  return nlohmann::json{{"points", points}};
}

}  // namespace modalkit
