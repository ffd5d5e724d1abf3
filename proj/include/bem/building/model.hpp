#pragma once
// Declarative multi-zone building description and its derived thermal
// parameters (net areas, lumped R and C, fictitious ground resistances).

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace bem::building {

struct Material {
  std::string name;
  double thickness = 0.0;      // m
  double conductivity = 0.0;   // W/(m*degC)
  double density = 0.0;        // kg/m^3
  double specific_heat = 0.0;  // J/(kg*degC)
};

struct Construction {
  std::string name;
  std::vector<Material> layers;  // outside -> inside
};

struct Window {
  std::string id;
  double area = 0.0;        // m^2
  double resistance = 0.0;  // degC/W
  double shgc = 0.0;
};

enum class SurfaceKind { Exterior, Interior, Underground };

struct Surface {
  std::string id;
  SurfaceKind kind = SurfaceKind::Exterior;
  double gross_area = 0.0;  // m^2
  Construction construction;
  std::vector<Window> windows;  // exterior surfaces only
  std::string adjacent_zone;    // interior surfaces only
  double h_i = 8.29;            // W/(m^2*degC)
  double h_o = 22.7;            // W/(m^2*degC), exterior/interior
  double r_eff = 0.0;           // degC/W, underground only
  double absorptance = 0.0;
  double tilt = 90.0;     // degrees from horizontal
  double azimuth = 180.0; // degrees clockwise from north

  // Derived by validate_building:
  double net_area = 0.0;     // m^2
  double resistance = 0.0;   // degC/W (soil layer included for underground)
  double capacitance = 0.0;  // J/degC, per surface node
  double r_fic = 0.0;        // degC/W, underground only
};

struct Zone {
  std::string id;
  double air_mass = 0.0;  // kg
  double setpoint = 21.0; // degC, filter initialization aid
  std::vector<Surface> surfaces;
};

struct Location {
  double latitude = 0.0;
  double longitude = 0.0;
};

struct BuildingModel {
  std::vector<Zone> zones;
  double cpa = 1005.0;  // J/(kg*degC)
  Location location;
  Material soil{"soil", 0.3, 1.0, 1500.0, 1500.0};

  bool validated = false;
  std::unordered_map<std::string, std::size_t> zone_index;

  const Zone& zone(const std::string& id) const {
    auto it = zone_index.find(id);
    if (it == zone_index.end()) throw std::out_of_range("unknown zone " + id);
    return zones[it->second];
  }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

// gross area minus window areas; throws ValidationError when windows cover
// the whole surface or more.
double net_area(const Surface& s);

// sum_g l^g / (k^g * A) over construction layers.
double thermal_resistance(const Construction& c, double net_area);

// sum_g rho^g cp^g l^g A / 2; this is the capacitance carried by EACH of the
// two surface nodes.
double thermal_capacitance(const Construction& c, double net_area);

// R_fic = R_eff - R for underground surfaces; throws when R_eff <= R.
double fictitious_resistance(double r_eff, double r);

// Checks every invariant, resolves zone references, caches derived values.
// Idempotent. Throws ValidationError carrying the full violation list.
BuildingModel validate_building(BuildingModel model);

}  // namespace bem::building
