#include "doctest.h"

#include "bem/building/loader.hpp"
#include "bem/building/model.hpp"
#include "bem/inputs/synth.hpp"

using namespace bem::building;

namespace {

Surface surface_with_windows(double gross, std::vector<double> window_areas) {
  Surface s;
  s.id = "s";
  s.gross_area = gross;
  int i = 0;
  for (double a : window_areas)
    s.windows.push_back({"w" + std::to_string(i++), a, 0.5, 0.4});
  return s;
}

}  // namespace

TEST_CASE("net_area") {
  CHECK(net_area(surface_with_windows(10.0, {1.5, 2.5})) == doctest::Approx(6.0));
  CHECK(net_area(surface_with_windows(10.0, {})) == doctest::Approx(10.0));
  CHECK_THROWS_AS(net_area(surface_with_windows(3.0, {2.0, 1.5})), ValidationError);
}

TEST_CASE("thermal_resistance") {
  Construction one{"c", {{"m", 0.2, 0.04, 0.0, 0.0}}};
  CHECK(thermal_resistance(one, 2.0) == doctest::Approx(2.5));

  Construction two{"c", {{"a", 0.1, 1.0, 0.0, 0.0}, {"b", 0.05, 0.025, 0.0, 0.0}}};
  CHECK(thermal_resistance(two, 1.0) == doctest::Approx(2.1));

  Construction bad{"c", {{"m", 0.1, 0.0, 0.0, 0.0}}};
  CHECK_THROWS_AS(thermal_resistance(bad, 1.0), ValidationError);
}

TEST_CASE("thermal_capacitance") {
  Construction c{"c", {{"concrete", 0.15, 1.4, 2400.0, 880.0}}};
  CHECK(thermal_capacitance(c, 10.0) == doctest::Approx(1584000.0));

  Construction nomass{"c", {{"film", 0.01, 1.0, 0.0, 0.0}}};
  CHECK(thermal_capacitance(nomass, 1.0) == doctest::Approx(0.0));

  Construction doubled{"c", {c.layers[0], c.layers[0]}};
  CHECK(thermal_capacitance(doubled, 10.0) ==
        doctest::Approx(2.0 * thermal_capacitance(c, 10.0)));
}

TEST_CASE("thermal_capacitance and resistance scaling laws") {
  Construction c{"c", {{"a", 0.1, 0.5, 1800.0, 900.0}, {"b", 0.05, 0.04, 40.0, 1400.0}}};
  // R scales as 1/A, C scales as A.
  const double r1 = thermal_resistance(c, 1.0);
  CHECK(thermal_resistance(c, 4.0) == doctest::Approx(r1 / 4.0));
  const double c1 = thermal_capacitance(c, 1.0);
  CHECK(thermal_capacitance(c, 4.0) == doctest::Approx(4.0 * c1));
}

TEST_CASE("fictitious_resistance") {
  CHECK(fictitious_resistance(3.0, 1.2) == doctest::Approx(1.8));
  CHECK(fictitious_resistance(2.0, 0.5) == doctest::Approx(1.5));
  CHECK_THROWS_AS(fictitious_resistance(1.0, 1.0), ValidationError);
}

TEST_CASE("validate_building accepts a synthetic grid and is idempotent") {
  BuildingModel m = bem::synth::grid_building({2, 2, true, true, 5});
  CHECK(m.validated);
  BuildingModel again = validate_building(m);
  CHECK(again.zones.size() == m.zones.size());
  for (std::size_t k = 0; k < m.zones.size(); ++k)
    for (std::size_t j = 0; j < m.zones[k].surfaces.size(); ++j) {
      CHECK(again.zones[k].surfaces[j].resistance ==
            m.zones[k].surfaces[j].resistance);
      CHECK(again.zones[k].surfaces[j].capacitance ==
            m.zones[k].surfaces[j].capacitance);
    }
}

TEST_CASE("validate_building aggregates violations with entity paths") {
  BuildingModel m = bem::synth::grid_building({2, 1, false, false, 1});
  m.validated = false;
  m.zones[0].surfaces[0].adjacent_zone = "nope";
  m.zones[1].air_mass = -1.0;
  try {
    validate_building(m);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.errors().size() >= 2);
    bool saw_surface = false, saw_zone = false;
    for (const auto& msg : e.errors()) {
      if (msg.find(m.zones[0].surfaces[0].id) != std::string::npos) saw_surface = true;
      if (msg.find("air_mass") != std::string::npos) saw_zone = true;
    }
    CHECK(saw_surface);
    CHECK(saw_zone);
  }
}

TEST_CASE("underground surface with insufficient R_eff is rejected") {
  BuildingModel m = bem::synth::grid_building({2, 2, false, true, 2});
  m.validated = false;
  for (auto& z : m.zones)
    for (auto& s : z.surfaces)
      if (s.kind == SurfaceKind::Underground) s.r_eff = 1e-6;
  CHECK_THROWS_AS(validate_building(m), ValidationError);
}

TEST_CASE("building JSON loader") {
  const char* text = R"({
    "cpa": 1005.0,
    "location": {"latitude": 42.9, "longitude": -78.8},
    "materials": [
      {"name": "brick", "thickness": 0.1, "conductivity": 0.72,
       "density": 1920, "specific_heat": 790}
    ],
    "constructions": [{"name": "wall", "layers": ["brick"]}],
    "zones": [
      {"id": "a", "air_mass": 300, "surfaces": [
        {"id": "a_e", "kind": "exterior", "gross_area": 12.0,
         "construction": "wall", "absorptance": 0.5,
         "windows": [{"id": "w1", "area": 2.0, "resistance": 0.4, "shgc": 0.4}]},
        {"id": "a_i", "kind": "interior", "gross_area": 10.0,
         "construction": "wall", "adjacent_zone": "b"}
      ]},
      {"id": "b", "air_mass": 250, "surfaces": [
        {"id": "b_i", "kind": "interior", "gross_area": 10.0,
         "construction": "wall", "adjacent_zone": "a"}
      ]}
    ]
  })";
  BuildingModel m = parse_building(text);
  CHECK(m.zones.size() == 2);
  CHECK(m.zones[0].surfaces[0].net_area == doctest::Approx(10.0));
  CHECK(m.zones[0].surfaces[0].resistance == doctest::Approx(0.1 / (0.72 * 10.0)));

  CHECK_THROWS_AS(parse_building("{ not json"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_building(R"({"zones": [{"id": "a", "air_mass": 1,
    "surfaces": [{"id": "s", "kind": "exterior", "gross_area": 1,
                  "construction": "missing"}]}]})"),
                       doctest::Contains("unknown construction"), ValidationError);
}
