#include "bem/inputs/synth.hpp"

#include <cmath>
#include <numbers>

#include "bem/io/rng.hpp"

namespace bem::synth {

using building::BuildingModel;
using building::Construction;
using building::Material;
using building::Surface;
using building::SurfaceKind;
using building::Window;
using building::Zone;

namespace {

Construction exterior_wall() {
  return {"ext_wall",
          {{"brick", 0.10, 0.72, 1920.0, 790.0},
           {"insulation", 0.08, 0.03, 40.0, 1400.0},
           {"gypsum", 0.016, 0.16, 800.0, 1090.0}}};
}

Construction interior_wall() {
  return {"int_wall",
          {{"gypsum", 0.016, 0.16, 800.0, 1090.0},
           {"air_gap", 0.09, 0.26, 1.2, 1005.0},
           {"gypsum", 0.016, 0.16, 800.0, 1090.0}}};
}

Construction slab() {
  return {"slab", {{"concrete", 0.15, 1.4, 2300.0, 880.0}}};
}

}  // namespace

BuildingModel grid_building(const BuildingSpec& spec) {
  io::Rng rng(spec.seed ^ 0xb17d1u);
  BuildingModel model;
  model.location = {42.9, -78.8};

  auto zone_id = [&](std::size_t x, std::size_t y) {
    return "z" + std::to_string(y * spec.grid_x + x + 1);
  };

  for (std::size_t y = 0; y < spec.grid_y; ++y) {
    for (std::size_t x = 0; x < spec.grid_x; ++x) {
      Zone z;
      z.id = zone_id(x, y);
      z.air_mass = 300.0 + 200.0 * rng.uniform();
      z.setpoint = 21.0;

      auto add_interior = [&](const std::string& adj, int ordinal) {
        Surface s;
        s.id = z.id + "_i" + std::to_string(ordinal);
        s.kind = SurfaceKind::Interior;
        s.gross_area = 18.0 + 8.0 * rng.uniform();
        s.construction = interior_wall();
        s.adjacent_zone = adj;
        s.h_i = 8.29;
        s.h_o = 8.29;
        z.surfaces.push_back(std::move(s));
      };
      int ord = 0;
      if (x > 0) add_interior(zone_id(x - 1, y), ord++);
      if (x + 1 < spec.grid_x) add_interior(zone_id(x + 1, y), ord++);
      if (y > 0) add_interior(zone_id(x, y - 1), ord++);
      if (y + 1 < spec.grid_y) add_interior(zone_id(x, y + 1), ord++);

      auto add_exterior = [&](double azimuth, int ordinal, bool with_window) {
        Surface s;
        s.id = z.id + "_e" + std::to_string(ordinal);
        s.kind = SurfaceKind::Exterior;
        s.gross_area = 20.0 + 10.0 * rng.uniform();
        s.construction = exterior_wall();
        s.h_i = 8.29;
        s.h_o = 22.7;
        s.absorptance = 0.6;
        s.tilt = 90.0;
        s.azimuth = azimuth;
        if (with_window && spec.windows) {
          Window w;
          w.id = s.id + "_w";
          w.area = 2.0 + rng.uniform();
          w.resistance = 0.35 + 0.1 * rng.uniform();
          w.shgc = 0.4;
          s.windows.push_back(std::move(w));
        }
        z.surfaces.push_back(std::move(s));
      };
      ord = 0;
      if (x == 0) add_exterior(270.0, ord++, false);
      if (x + 1 == spec.grid_x) add_exterior(90.0, ord++, false);
      if (y + 1 == spec.grid_y) add_exterior(0.0, ord++, false);
      if (y == 0) add_exterior(180.0, ord++, true);  // south face, windowed

      if (spec.underground && y == 0) {
        Surface s;
        s.id = z.id + "_g";
        s.kind = SurfaceKind::Underground;
        s.gross_area = 30.0 + 10.0 * rng.uniform();
        s.construction = slab();
        s.h_i = 8.29;
        s.r_eff = 1.0;  // exceeds computed R for these areas
        z.surfaces.push_back(std::move(s));
      }
      model.zones.push_back(std::move(z));
    }
  }
  return building::validate_building(std::move(model));
}

std::vector<inputs::WeatherRecord> synthetic_weather(std::size_t hours,
                                                     std::uint64_t seed) {
  io::Rng rng(seed ^ 0x7ea717c1U);
  // Monthly mean ground temperatures, interpolated linearly below.
  const double ground_monthly[12] = {4.0, 3.5, 5.0, 8.0, 12.0, 16.0,
                                     18.5, 18.0, 15.0, 11.0, 7.5, 5.0};
  const std::int64_t start = inputs::parse_timestamp("2021-01-01T00:00:00").epoch_s;

  std::vector<inputs::WeatherRecord> out;
  out.reserve(hours);
  for (std::size_t h = 0; h < hours; ++h) {
    inputs::WeatherRecord w;
    w.t.epoch_s = start + static_cast<std::int64_t>(h) * 3600;
    w.t.text = inputs::format_timestamp(w.t.epoch_s);
    const double doy = w.t.day_of_year();
    const double hod = w.t.decimal_hour();

    const double seasonal = -8.0 * std::cos(2.0 * std::numbers::pi * (doy - 15.0) / 365.0);
    const double diurnal = -4.0 * std::cos(2.0 * std::numbers::pi * (hod - 3.0) / 24.0);
    w.t_amb = 8.0 + seasonal + diurnal + 1.5 * (rng.uniform() - 0.5);

    const double month_pos = std::fmod((doy - 1.0) / 365.0 * 12.0, 12.0);
    const int m0 = static_cast<int>(month_pos) % 12;
    const int m1 = (m0 + 1) % 12;
    const double frac = month_pos - std::floor(month_pos);
    w.t_ground = (1.0 - frac) * ground_monthly[m0] + frac * ground_monthly[m1];

    const double daylight = std::sin(std::numbers::pi * (hod - 6.0) / 12.0);
    if (hod > 6.0 && hod < 18.0 && daylight > 0.0) {
      const double season_scale = 0.6 - 0.4 * std::cos(2.0 * std::numbers::pi * (doy - 15.0) / 365.0);
      w.i_beam = 600.0 * daylight * season_scale;
      w.i_sky = 120.0 * daylight * season_scale;
      w.i_ground = 40.0 * daylight * season_scale;
    }
    out.push_back(std::move(w));
  }
  return out;
}

inputs::HvacSeries synthetic_hvac(const BuildingModel& model,
                                  const std::vector<inputs::WeatherRecord>& weather,
                                  std::uint64_t seed) {
  io::Rng rng(seed ^ 0x47ac5U);
  const std::size_t n = model.zones.size();
  std::vector<double> base_flow(n);
  for (std::size_t k = 0; k < n; ++k)
    base_flow[k] = 0.08 + 0.06 * rng.uniform();

  inputs::HvacSeries hs;
  for (const auto& w : weather) {
    const int hod = w.t.hour_of_day();
    const bool occupied = !w.t.is_weekend() && hod >= 7 && hod < 22;
    statespace::HvacInput rec{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
      rec.m_dot[k] = occupied ? base_flow[k] : 0.25 * base_flow[k];
      // Supply warm air in the heating season, cool in summer.
      rec.u_sa[k] = w.t_amb < 14.0 ? 32.0 : 14.0;
    }
    hs.timestamps.push_back(w.t);
    hs.records.push_back(std::move(rec));
  }
  return hs;
}

inputs::LoadProfiles synthetic_loads(const BuildingModel& model, std::uint64_t seed) {
  io::Rng rng(seed ^ 0x10adU);
  inputs::LoadProfiles p = inputs::zero_profiles(model);
  for (std::size_t k = 0; k < model.zones.size(); ++k) {
    const double peak = 400.0 + 400.0 * rng.uniform();
    for (int h = 0; h < 24; ++h) {
      // Midday peak, low baseline at night.
      const double shape = h >= 7 && h <= 21
          ? std::sin(std::numbers::pi * (h - 7.0) / 14.0)
          : 0.0;
      p.zone_int[k][0][h] = 0.15 * peak + peak * shape;        // weekday
      p.zone_int[k][1][h] = 0.15 * peak + 0.3 * peak * shape;  // weekend
    }
    for (std::size_t j = 0; j < model.zones[k].surfaces.size(); ++j) {
      const double speak = 20.0 + 30.0 * rng.uniform();
      for (int h = 9; h <= 17; ++h)
        p.surf_q[k][j][h] = speak * std::sin(std::numbers::pi * (h - 9.0) / 8.0);
    }
  }
  return p;
}

}  // namespace bem::synth
