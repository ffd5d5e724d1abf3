#include "bem/building/loader.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace bem::building {

namespace {

using nlohmann::json;

double req_num(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key))
    throw ValidationError({path + ": missing field '" + key + "'"});
  if (!j[key].is_number())
    throw ValidationError({path + "." + key + ": expected a number"});
  return j[key].get<double>();
}

std::string req_str(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_string())
    throw ValidationError({path + ": missing string field '" + key + "'"});
  return j[key].get<std::string>();
}

Material parse_material(const json& j, const std::string& path) {
  Material m;
  m.name = req_str(j, "name", path);
  m.thickness = req_num(j, "thickness", path);
  m.conductivity = req_num(j, "conductivity", path);
  m.density = req_num(j, "density", path);
  m.specific_heat = req_num(j, "specific_heat", path);
  return m;
}

SurfaceKind parse_kind(const std::string& s, const std::string& path) {
  if (s == "exterior") return SurfaceKind::Exterior;
  if (s == "interior") return SurfaceKind::Interior;
  if (s == "underground") return SurfaceKind::Underground;
  throw ValidationError({path + ": unknown surface kind '" + s +
                         "' (expected exterior|interior|underground)"});
}

}  // namespace

BuildingModel parse_building(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann reports line/column-free byte positions; surface them as-is.
    throw std::runtime_error(origin + ": " + e.what());
  }

  BuildingModel model;
  model.cpa = root.value("cpa", 1005.0);
  if (root.contains("location")) {
    model.location.latitude = req_num(root["location"], "latitude", "location");
    model.location.longitude = req_num(root["location"], "longitude", "location");
  }
  if (root.contains("soil")) {
    const auto& s = root["soil"];
    model.soil.thickness = s.value("thickness", model.soil.thickness);
    model.soil.conductivity = s.value("conductivity", model.soil.conductivity);
    model.soil.density = s.value("density", model.soil.density);
    model.soil.specific_heat = s.value("specific_heat", model.soil.specific_heat);
  }

  std::unordered_map<std::string, Material> materials;
  for (const auto& jm : root.value("materials", json::array())) {
    Material m = parse_material(jm, "materials");
    materials[m.name] = m;
  }

  std::unordered_map<std::string, Construction> constructions;
  for (const auto& jc : root.value("constructions", json::array())) {
    Construction c;
    c.name = req_str(jc, "name", "constructions");
    if (!jc.contains("layers") || !jc["layers"].is_array())
      throw ValidationError({"constructions." + c.name + ": missing layers array"});
    for (const auto& jl : jc["layers"]) {
      if (jl.is_string()) {
        auto it = materials.find(jl.get<std::string>());
        if (it == materials.end())
          throw ValidationError({"constructions." + c.name + ": unknown material '" +
                                 jl.get<std::string>() + "'"});
        c.layers.push_back(it->second);
      } else {
        c.layers.push_back(parse_material(jl, "constructions." + c.name));
      }
    }
    constructions[c.name] = c;
  }

  if (!root.contains("zones") || !root["zones"].is_array())
    throw ValidationError({"zones: missing array"});
  for (const auto& jz : root["zones"]) {
    Zone z;
    z.id = req_str(jz, "id", "zones");
    const std::string zp = "zones." + z.id;
    z.air_mass = req_num(jz, "air_mass", zp);
    z.setpoint = jz.value("setpoint", 21.0);
    for (const auto& js : jz.value("surfaces", json::array())) {
      Surface s;
      s.id = req_str(js, "id", zp + ".surfaces");
      const std::string sp = zp + ".surfaces." + s.id;
      s.kind = parse_kind(req_str(js, "kind", sp), sp);
      s.gross_area = req_num(js, "gross_area", sp);
      const std::string cname = req_str(js, "construction", sp);
      auto it = constructions.find(cname);
      if (it == constructions.end())
        throw ValidationError({sp + ": unknown construction '" + cname + "'"});
      s.construction = it->second;
      s.h_i = js.value("h_i", 8.29);
      s.h_o = js.value("h_o", s.kind == SurfaceKind::Interior ? 8.29 : 22.7);
      s.absorptance = js.value("absorptance", 0.0);
      s.tilt = js.value("tilt", 90.0);
      s.azimuth = js.value("azimuth", 180.0);
      if (s.kind == SurfaceKind::Interior)
        s.adjacent_zone = req_str(js, "adjacent_zone", sp);
      if (s.kind == SurfaceKind::Underground)
        s.r_eff = req_num(js, "r_eff", sp);
      for (const auto& jw : js.value("windows", json::array())) {
        Window w;
        w.id = req_str(jw, "id", sp + ".windows");
        w.area = req_num(jw, "area", sp + ".windows." + w.id);
        w.resistance = req_num(jw, "resistance", sp + ".windows." + w.id);
        w.shgc = req_num(jw, "shgc", sp + ".windows." + w.id);
        s.windows.push_back(std::move(w));
      }
      z.surfaces.push_back(std::move(s));
    }
    model.zones.push_back(std::move(z));
  }

  return validate_building(std::move(model));
}

BuildingModel load_building(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open building file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_building(buf.str(), path);
}

}  // namespace bem::building
