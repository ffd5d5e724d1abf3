#include "bem/building/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace bem::building {

namespace {

std::string join(const std::vector<std::string>& errors) {
  std::ostringstream os;
  os << errors.size() << " validation error(s):";
  for (const auto& e : errors) os << "\n  - " << e;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> errors)
    : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

double net_area(const Surface& s) {
  double win = 0.0;
  for (const auto& w : s.windows) win += w.area;
  if (win >= s.gross_area)
    throw ValidationError({"surface " + s.id + ": window area " +
                           std::to_string(win) + " >= gross area " +
                           std::to_string(s.gross_area)});
  return s.gross_area - win;
}

double thermal_resistance(const Construction& c, double area) {
  if (!(area > 0.0))
    throw ValidationError({"construction " + c.name + ": net area must be > 0"});
  double r = 0.0;
  for (const auto& g : c.layers) {
    if (!(g.thickness > 0.0) || !(g.conductivity > 0.0))
      throw ValidationError({"material " + g.name +
                             ": thickness and conductivity must be > 0"});
    r += g.thickness / (g.conductivity * area);
  }
  return r;
}

double thermal_capacitance(const Construction& c, double area) {
  if (!(area > 0.0))
    throw ValidationError({"construction " + c.name + ": net area must be > 0"});
  double cap = 0.0;
  for (const auto& g : c.layers)
    cap += g.density * g.specific_heat * g.thickness * area / 2.0;
  return cap;
}

double fictitious_resistance(double r_eff, double r) {
  if (!(r_eff > r))
    throw ValidationError({"underground surface: R_eff (" +
                           std::to_string(r_eff) + ") must exceed computed R (" +
                           std::to_string(r) + ")"});
  return r_eff - r;
}

BuildingModel validate_building(BuildingModel model) {
  std::vector<std::string> errors;
  auto fail = [&](const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  };

  if (!(model.cpa > 0.0)) fail("cpa", "must be > 0");
  if (!(model.soil.thickness > 0.0) || !(model.soil.conductivity > 0.0))
    fail("soil", "thickness and conductivity must be > 0");

  model.zone_index.clear();
  for (std::size_t k = 0; k < model.zones.size(); ++k) {
    const auto& z = model.zones[k];
    if (!model.zone_index.emplace(z.id, k).second)
      fail("zones." + z.id, "duplicate zone id");
  }
  if (model.zones.empty()) fail("zones", "at least one zone required");

  std::set<std::string> surface_ids;
  for (auto& z : model.zones) {
    const std::string zp = "zones." + z.id;
    if (!(z.air_mass > 0.0)) fail(zp, "air_mass must be > 0");
    if (z.surfaces.empty()) fail(zp, "at least one surface required");

    for (auto& s : z.surfaces) {
      const std::string sp = zp + ".surfaces." + s.id;
      if (!surface_ids.insert(s.id).second) fail(sp, "duplicate surface id");
      if (!(s.gross_area > 0.0)) fail(sp, "gross_area must be > 0");
      if (!(s.h_i > 0.0)) fail(sp, "h_i must be > 0");
      if (s.absorptance < 0.0 || s.absorptance > 1.0)
        fail(sp, "absorptance outside [0, 1]");
      if (s.construction.layers.empty()) fail(sp, "construction has no layers");
      for (const auto& g : s.construction.layers) {
        if (!(g.thickness > 0.0)) fail(sp, "material " + g.name + ": thickness must be > 0");
        if (!(g.conductivity > 0.0)) fail(sp, "material " + g.name + ": conductivity must be > 0");
        if (g.density < 0.0) fail(sp, "material " + g.name + ": density must be >= 0");
        if (g.specific_heat < 0.0) fail(sp, "material " + g.name + ": specific_heat must be >= 0");
      }

      double win = 0.0;
      for (const auto& w : s.windows) {
        if (!(w.area > 0.0)) fail(sp + ".windows." + w.id, "area must be > 0");
        if (!(w.resistance > 0.0)) fail(sp + ".windows." + w.id, "resistance must be > 0");
        if (w.shgc < 0.0 || w.shgc > 1.0) fail(sp + ".windows." + w.id, "shgc outside [0, 1]");
        win += w.area;
      }
      if (win >= s.gross_area) fail(sp, "window area >= gross area");

      switch (s.kind) {
        case SurfaceKind::Exterior:
          if (!(s.h_o > 0.0)) fail(sp, "h_o must be > 0");
          break;
        case SurfaceKind::Interior:
          if (!(s.h_o > 0.0)) fail(sp, "h_o must be > 0");
          if (s.adjacent_zone.empty()) fail(sp, "interior surface needs adjacent_zone");
          else if (!model.zone_index.count(s.adjacent_zone))
            fail(sp, "adjacent_zone '" + s.adjacent_zone + "' does not exist");
          else if (s.adjacent_zone == z.id)
            fail(sp, "adjacent_zone must differ from owning zone");
          if (!s.windows.empty()) fail(sp, "interior surfaces cannot carry windows");
          break;
        case SurfaceKind::Underground:
          if (!s.windows.empty()) fail(sp, "underground surfaces cannot carry windows");
          break;
      }
    }
  }

  if (!errors.empty()) throw ValidationError(std::move(errors));

  // Cache derived quantities. Failures here are reported with paths too.
  for (auto& z : model.zones) {
    for (auto& s : z.surfaces) {
      const std::string sp = "zones." + z.id + ".surfaces." + s.id;
      s.net_area = net_area(s);
      Construction c = s.construction;
      if (s.kind == SurfaceKind::Underground) c.layers.push_back(model.soil);
      s.resistance = thermal_resistance(c, s.net_area);
      s.capacitance = thermal_capacitance(c, s.net_area);
      if (!(s.capacitance > 0.0))
        errors.push_back(sp + ": construction has zero thermal capacitance");
      if (s.kind == SurfaceKind::Underground) {
        if (!(s.r_eff > s.resistance)) {
          errors.push_back(sp + ": R_eff (" + std::to_string(s.r_eff) +
                           ") must exceed computed R (" +
                           std::to_string(s.resistance) + ")");
        } else {
          s.r_fic = fictitious_resistance(s.r_eff, s.resistance);
        }
      }
    }
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));

  model.validated = true;
  return model;
}

}  // namespace bem::building
