#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "bem/building/model.hpp"
#include "bem/inputs/series.hpp"
#include "bem/inputs/solar.hpp"
#include "bem/inputs/synth.hpp"
#include "bem/inputs/truth.hpp"
#include "bem/statespace/system.hpp"

using namespace bem;
using namespace bem::inputs;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path("/tmp/bem_test_" + name) {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::vector<WeatherRecord> flat_weather(std::size_t hours, double t_amb,
                                        double t_ground) {
  std::vector<WeatherRecord> w(hours);
  const Timestamp t0 = parse_timestamp("2021-01-01T00:00:00");
  for (std::size_t i = 0; i < hours; ++i) {
    w[i].t.epoch_s = t0.epoch_s + static_cast<std::int64_t>(i) * 3600;
    w[i].t.text = format_timestamp(w[i].t.epoch_s);
    w[i].t_amb = t_amb;
    w[i].t_ground = t_ground;
  }
  return w;
}

HvacSeries flat_hvac(const std::vector<WeatherRecord>& w, std::size_t zones,
                     double m_dot, double u_sa) {
  HvacSeries h;
  for (const auto& r : w) {
    h.timestamps.push_back(r.t);
    h.records.push_back({std::vector<double>(zones, m_dot),
                         std::vector<double>(zones, u_sa)});
  }
  return h;
}

}  // namespace

TEST_CASE("timestamp parsing and calendar helpers") {
  Timestamp t = parse_timestamp("2021-03-02T13:30:00");
  CHECK(t.hour_of_day() == 13);
  CHECK(t.day_of_year() == 61);
  CHECK(t.decimal_hour() == doctest::Approx(13.5));
  CHECK_FALSE(t.is_weekend());  // a Tuesday
  CHECK(parse_timestamp("2021-01-02T00:00:00").is_weekend());  // a Saturday
  CHECK(format_timestamp(t.epoch_s) == "2021-03-02T13:30:00");
  CHECK(parse_timestamp("1970-01-01T00:00:00").epoch_s == 0);
  CHECK_THROWS(parse_timestamp("garbage"));
}

TEST_CASE("load_weather accepts clean series and rejects malformed ones") {
  const std::string header = "timestamp,t_amb_c,t_ground_c,i_beam,i_sky,i_ground\n";
  TempFile good("w_good.csv", header +
      "2021-01-01T00:00:00,-2.0,8.0,0,0,0\n"
      "2021-01-01T01:00:00,-2.5,8.0,0,0,0\n"
      "2021-01-01T02:00:00,-3.0,8.0,0,0,0\n");
  auto recs = load_weather(good.path);
  CHECK(recs.size() == 3);
  CHECK(recs[1].t_amb == doctest::Approx(-2.5));

  TempFile dup("w_dup.csv", header +
      "2021-01-01T00:00:00,0,0,0,0,0\n"
      "2021-01-01T00:00:00,0,0,0,0,0\n");
  CHECK_THROWS(load_weather(dup.path));

  TempFile gap("w_gap.csv", header +
      "2021-01-01T00:00:00,0,0,0,0,0\n"
      "2021-01-01T01:00:00,0,0,0,0,0\n"
      "2021-01-01T03:00:00,0,0,0,0,0\n");
  CHECK_THROWS(load_weather(gap.path));

  TempFile neg("w_neg.csv", header +
      "2021-01-01T00:00:00,0,0,-5,0,0\n"
      "2021-01-01T01:00:00,0,0,0,0,0\n");
  CHECK_THROWS(load_weather(neg.path));

  TempFile cols("w_cols.csv", "timestamp,t_amb_c\n2021-01-01T00:00:00,0\n");
  CHECK_THROWS(load_weather(cols.path));
}

TEST_CASE("exterior_solar_gain formula and linearity") {
  building::Surface s;
  s.id = "s";
  s.kind = building::SurfaceKind::Exterior;
  s.absorptance = 0.5;
  SolarGeometry g{1.0, 1.0, 0.5, 0.5};
  WeatherRecord w;
  w.i_beam = 500.0;
  w.i_sky = 100.0;
  w.i_ground = 50.0;
  CHECK(exterior_solar_gain(s, w, g) == doctest::Approx(287.5));

  WeatherRecord night;
  CHECK(exterior_solar_gain(s, night, g) == 0.0);

  building::Surface dark = s;
  dark.absorptance = 0.0;
  CHECK(exterior_solar_gain(dark, w, g) == 0.0);

  WeatherRecord doubled = w;
  doubled.i_beam *= 2.0;
  doubled.i_sky *= 2.0;
  doubled.i_ground *= 2.0;
  CHECK(exterior_solar_gain(s, doubled, g) ==
        doctest::Approx(2.0 * exterior_solar_gain(s, w, g)));

  building::Surface interior = s;
  interior.kind = building::SurfaceKind::Interior;
  CHECK_THROWS(exterior_solar_gain(interior, w, g));
}

TEST_CASE("window_solar_gain") {
  building::Zone z;
  z.id = "z";
  building::Surface s;
  s.id = "s";
  s.gross_area = 10.0;
  s.windows.push_back({"w", 2.0, 0.5, 0.4});
  z.surfaces.push_back(s);
  CHECK(window_solar_gain(z, {600.0}) == doctest::Approx(480.0));

  building::Zone bare;
  bare.surfaces.push_back({});
  CHECK(window_solar_gain(bare, {}) == 0.0);

  building::Zone two = z;
  two.surfaces[0].windows.push_back({"w2", 2.0, 0.5, 0.4});
  CHECK(window_solar_gain(two, {600.0, 600.0}) == doctest::Approx(960.0));
}

TEST_CASE("solar geometry angle factors and clamping") {
  building::Location loc{42.9, -78.8};
  building::Surface s;
  s.tilt = 35.0;
  s.azimuth = 180.0;
  // Sample a full day: factors always consistent, incidence always in [0,1].
  for (int h = 0; h < 24; ++h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "2021-06-21T%02d:00:00", h);
    Timestamp t = parse_timestamp(buf);
    SolarGeometry g = solar_geometry(s, loc, t);
    CHECK(g.f_ss + g.f_sg == doctest::Approx(1.0));
    CHECK(g.cos_theta >= 0.0);
    CHECK(g.cos_theta <= 1.0);
  }
  // Midnight: sun below horizon, incidence clamps to zero.
  SolarGeometry mid = solar_geometry(s, loc, parse_timestamp("2021-06-21T00:00:00"));
  CHECK(mid.cos_theta == 0.0);
  // Noon on the summer solstice hits a south-facing tilted surface.
  SolarGeometry noon = solar_geometry(s, loc, parse_timestamp("2021-06-21T12:00:00"));
  CHECK(noon.cos_theta > 0.5);
}

TEST_CASE("assemble_input is a pure reindexing") {
  auto model = synth::grid_building({2, 2, true, true, 13});
  auto il = statespace::build_input_layout(model);

  WeatherRecord w;
  w.t = parse_timestamp("2021-01-01T00:00:00");
  statespace::HvacInput h{{0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}};
  std::vector<double> u_o(il.exterior_surfaces.size(), 0.0);
  Vector u = assemble_input(model, il, w, w.t, h, u_o);
  for (double v : u) CHECK(v == 0.0);

  w.t_amb = -7.5;
  w.t_ground = 9.25;
  for (std::size_t e = 0; e < u_o.size(); ++e) u_o[e] = 10.0 + double(e);
  h.m_dot = {0.1, 0.2, 0.3, 0.4};
  h.u_sa = {30.0, 30.0, 14.0, 14.0};
  u = assemble_input(model, il, w, w.t, h, u_o);
  CHECK(u[il.t_amb] == -7.5);
  CHECK(u[il.t_ground] == 9.25);
  for (std::size_t e = 0; e < u_o.size(); ++e) CHECK(u[il.solar_slot(e)] == u_o[e]);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(u[il.hvac_slot(k)] == doctest::Approx(h.m_dot[k] * h.u_sa[k]));
  CHECK(u.size() == il.size);

  Timestamp other = parse_timestamp("2021-01-01T01:00:00");
  CHECK_THROWS(assemble_input(model, il, w, other, h, u_o));
}

TEST_CASE("simulate_truth holds equilibrium under matched constant inputs") {
  auto model = synth::grid_building({2, 1, false, false, 1});
  for (auto& z : model.zones) z.setpoint = 20.0;
  auto weather = flat_weather(48, 20.0, 20.0);
  auto hvac = flat_hvac(weather, 2, 0.2, 20.0);
  auto loads = zero_profiles(model);

  SimulationOptions opt;
  opt.zero_noise = true;
  TruthResult r = simulate_truth(model, weather, hvac, loads, 1, opt);
  statespace::StateLayout layout(model);
  for (const auto& x : r.states)
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!layout.is_load_state(i)) CHECK(x[i] == doctest::Approx(20.0).epsilon(1e-10));
  for (const auto& z : r.measurements)
    for (double v : z) CHECK(v == doctest::Approx(20.0).epsilon(1e-10));
}

TEST_CASE("simulate_truth is deterministic in the seed") {
  auto model = synth::grid_building({2, 2, true, true, 3});
  auto weather = synth::synthetic_weather(72, 3);
  auto hvac = synth::synthetic_hvac(model, weather, 3);
  auto loads = synth::synthetic_loads(model, 3);

  TruthResult a = simulate_truth(model, weather, hvac, loads, 42);
  TruthResult b = simulate_truth(model, weather, hvac, loads, 42);
  CHECK(a.noise_variance == b.noise_variance);
  for (std::size_t r = 0; r < a.measurements.size(); ++r)
    CHECK(a.measurements[r] == b.measurements[r]);

  TruthResult c = simulate_truth(model, weather, hvac, loads, 43);
  bool differs = false;
  for (std::size_t r = 0; r < a.measurements.size() && !differs; ++r)
    differs = a.measurements[r] != c.measurements[r];
  CHECK(differs);
}

TEST_CASE("measurement noise sample variance matches the drawn r_k") {
  auto model = synth::grid_building({1, 1, false, false, 5});
  auto weather = synth::synthetic_weather(8760, 5);
  auto hvac = synth::synthetic_hvac(model, weather, 5);
  auto loads = zero_profiles(model);

  SimulationOptions noisy;
  SimulationOptions clean;
  clean.zero_noise = true;
  TruthResult a = simulate_truth(model, weather, hvac, loads, 99, noisy);
  TruthResult b = simulate_truth(model, weather, hvac, loads, 99, clean);
  REQUIRE(a.noise_variance[0] > 0.0);
  CHECK(a.noise_variance[0] <= 0.5);

  double sum = 0.0, sum2 = 0.0;
  const std::size_t n = a.measurements.size();
  for (std::size_t r = 0; r < n; ++r) {
    const double d = a.measurements[r][0] - b.measurements[r][0];
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / double(n);
  const double var = sum2 / double(n) - mean * mean;
  CHECK(var == doctest::Approx(a.noise_variance[0]).epsilon(0.20));
}

TEST_CASE("load profile schedules and loader") {
  auto model = synth::grid_building({2, 1, false, false, 7});
  const std::string& z0 = model.zones[0].id;
  const std::string& s00 = model.zones[0].surfaces[0].id;
  TempFile f("loads.csv",
      "entity,id,day_type,hour,value_w\n"
      "zone," + z0 + ",weekday,9,450\n"
      "zone," + z0 + ",weekend,9,120\n"
      "surface," + s00 + ",all,12,80\n");
  LoadProfiles p = load_profiles(f.path, model);
  Timestamp wk = parse_timestamp("2021-03-01T09:30:00");   // Monday
  Timestamp we = parse_timestamp("2021-03-06T09:30:00");   // Saturday
  CHECK(p.t_int(0, wk) == doctest::Approx(450.0));
  CHECK(p.t_int(0, we) == doctest::Approx(120.0));
  CHECK(p.t_int(1, wk) == 0.0);
  CHECK(p.t_q(0, 0, parse_timestamp("2021-03-01T12:00:00")) == doctest::Approx(80.0));
  CHECK(p.t_q(0, 0, wk) == 0.0);

  TempFile bad("loads_bad.csv",
      "entity,id,day_type,hour,value_w\nzone,nope,weekday,9,450\n");
  CHECK_THROWS(load_profiles(bad.path, model));
}
