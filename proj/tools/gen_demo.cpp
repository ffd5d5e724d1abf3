// Regenerates the bundled demo dataset: a 12-zone coupled building plus one
// week of aligned weather, HVAC, and load-profile files in the formats the
// CLI consumes. Usage: gen_demo <output-dir>
//
// The weather/HVAC horizon is a week to keep the repository small; the same
// building works with any horizon of the synthetic series (see the
// benchmark and acceptance runs, which generate a full year in-process).

#include <fstream>
#include <iostream>
#include <string>

#include "bem/building/model.hpp"
#include "bem/inputs/synth.hpp"
#include "json.hpp"

using namespace bem;
using nlohmann::json;

namespace {

json material_json(const building::Material& m) {
  return {{"name", m.name},
          {"thickness", m.thickness},
          {"conductivity", m.conductivity},
          {"density", m.density},
          {"specific_heat", m.specific_heat}};
}

json building_json(const building::BuildingModel& model) {
  json root;
  root["cpa"] = model.cpa;
  root["location"] = {{"latitude", model.location.latitude},
                      {"longitude", model.location.longitude}};
  root["soil"] = material_json(model.soil);

  json zones = json::array();
  for (const auto& z : model.zones) {
    json jz;
    jz["id"] = z.id;
    jz["air_mass"] = z.air_mass;
    jz["setpoint"] = z.setpoint;
    json surfaces = json::array();
    for (const auto& s : z.surfaces) {
      json js;
      js["id"] = s.id;
      js["kind"] = s.kind == building::SurfaceKind::Exterior   ? "exterior"
                   : s.kind == building::SurfaceKind::Interior ? "interior"
                                                               : "underground";
      js["gross_area"] = s.gross_area;
      js["construction"] = s.construction.name;
      js["h_i"] = s.h_i;
      js["h_o"] = s.h_o;
      js["absorptance"] = s.absorptance;
      js["tilt"] = s.tilt;
      js["azimuth"] = s.azimuth;
      if (s.kind == building::SurfaceKind::Interior)
        js["adjacent_zone"] = s.adjacent_zone;
      if (s.kind == building::SurfaceKind::Underground) js["r_eff"] = s.r_eff;
      if (!s.windows.empty()) {
        json ws = json::array();
        for (const auto& w : s.windows)
          ws.push_back({{"id", w.id},
                        {"area", w.area},
                        {"resistance", w.resistance},
                        {"shgc", w.shgc}});
        js["windows"] = ws;
      }
      surfaces.push_back(std::move(js));
    }
    jz["surfaces"] = std::move(surfaces);
    zones.push_back(std::move(jz));
  }
  root["zones"] = std::move(zones);

  // Shared construction table, collected from the surfaces.
  json constructions = json::array();
  json materials = json::array();
  std::vector<std::string> seen_c, seen_m;
  for (const auto& z : model.zones)
    for (const auto& s : z.surfaces) {
      const auto& c = s.construction;
      if (std::find(seen_c.begin(), seen_c.end(), c.name) != seen_c.end()) continue;
      seen_c.push_back(c.name);
      json layers = json::array();
      for (const auto& l : c.layers) {
        layers.push_back(l.name);
        if (std::find(seen_m.begin(), seen_m.end(), l.name) == seen_m.end()) {
          seen_m.push_back(l.name);
          materials.push_back(material_json(l));
        }
      }
      constructions.push_back({{"name", c.name}, {"layers", layers}});
    }
  root["materials"] = std::move(materials);
  root["constructions"] = std::move(constructions);
  return root;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out = argc > 1 ? argv[1] : "data/demo";
  constexpr std::uint64_t kSeed = 7;
  constexpr std::size_t kHours = 24 * 7;

  const auto model = synth::grid_building({4, 3, true, true, kSeed});
  const auto weather = synth::synthetic_weather(kHours, kSeed);
  const auto hvac = synth::synthetic_hvac(model, weather, kSeed);
  const auto loads = synth::synthetic_loads(model, kSeed);

  {
    std::ofstream f(out + "/building.json");
    f << building_json(model).dump(2) << "\n";
  }
  {
    std::ofstream f(out + "/weather.csv");
    f << "timestamp,t_amb_c,t_ground_c,i_beam,i_sky,i_ground\n";
    f.precision(10);
    for (const auto& w : weather)
      f << w.t.text << ',' << w.t_amb << ',' << w.t_ground << ',' << w.i_beam
        << ',' << w.i_sky << ',' << w.i_ground << '\n';
  }
  {
    std::ofstream f(out + "/hvac.csv");
    f << "timestamp,zone_id,m_dot_kg_s,t_supply_c\n";
    f.precision(10);
    for (std::size_t r = 0; r < hvac.timestamps.size(); ++r)
      for (std::size_t k = 0; k < model.zones.size(); ++k)
        f << hvac.timestamps[r].text << ',' << model.zones[k].id << ','
          << hvac.records[r].m_dot[k] << ',' << hvac.records[r].u_sa[k] << '\n';
  }
  {
    std::ofstream f(out + "/loads.csv");
    f << "entity,id,day_type,hour,value_w\n";
    f.precision(10);
    for (std::size_t k = 0; k < model.zones.size(); ++k) {
      for (int h = 0; h < 24; ++h) {
        f << "zone," << model.zones[k].id << ",weekday," << h << ','
          << loads.zone_int[k][0][h] << '\n';
        f << "zone," << model.zones[k].id << ",weekend," << h << ','
          << loads.zone_int[k][1][h] << '\n';
      }
      for (std::size_t j = 0; j < model.zones[k].surfaces.size(); ++j)
        for (int h = 0; h < 24; ++h)
          if (loads.surf_q[k][j][h] != 0.0)
            f << "surface," << model.zones[k].surfaces[j].id << ",all," << h
              << ',' << loads.surf_q[k][j][h] << '\n';
    }
  }
  std::cout << "wrote demo dataset (" << model.zones.size() << " zones, "
            << kHours << " h) to " << out << "\n";
  return 0;
}
