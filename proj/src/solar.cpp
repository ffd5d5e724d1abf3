#include "bem/inputs/solar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bem::inputs {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

SolarGeometry solar_geometry(const building::Surface& s,
                             const building::Location& loc, const Timestamp& t) {
  SolarGeometry g;
  const double tilt = s.tilt * kDeg;
  g.f_ss = 0.5 * (1.0 + std::cos(tilt));
  g.f_sg = 0.5 * (1.0 - std::cos(tilt));

  // Declination and hour angle; timestamps are treated as local solar time
  // with a longitude correction folded into the hour angle.
  const int doy = t.day_of_year();
  const double decl = 23.45 * kDeg * std::sin(2.0 * std::numbers::pi * (284.0 + doy) / 365.0);
  const double solar_hour = t.decimal_hour() + loc.longitude / 15.0 -
                            std::round(loc.longitude / 15.0);
  const double hour_angle = (solar_hour - 12.0) * 15.0 * kDeg;
  const double lat = loc.latitude * kDeg;

  const double cos_zenith = std::sin(lat) * std::sin(decl) +
                            std::cos(lat) * std::cos(decl) * std::cos(hour_angle);
  if (cos_zenith <= 0.0) {
    g.cos_theta = 0.0;
    return g;
  }

  // Incidence on a tilted surface; gamma is the azimuth measured from south.
  const double gamma = (s.azimuth - 180.0) * kDeg;
  const double ct =
      std::sin(decl) * std::sin(lat) * std::cos(tilt) -
      std::sin(decl) * std::cos(lat) * std::sin(tilt) * std::cos(gamma) +
      std::cos(decl) * std::cos(lat) * std::cos(tilt) * std::cos(hour_angle) +
      std::cos(decl) * std::sin(lat) * std::sin(tilt) * std::cos(gamma) * std::cos(hour_angle) +
      std::cos(decl) * std::sin(tilt) * std::sin(gamma) * std::sin(hour_angle);
  g.cos_theta = std::clamp(ct, 0.0, 1.0);
  return g;
}

double exterior_solar_gain(const building::Surface& s, const WeatherRecord& w,
                           const SolarGeometry& g) {
  if (s.kind != building::SurfaceKind::Exterior)
    throw std::invalid_argument("exterior_solar_gain: surface " + s.id +
                                " is not exterior");
  return s.absorptance * (w.i_beam * g.sunlit_fraction * g.cos_theta +
                          w.i_sky * g.f_ss + w.i_ground * g.f_sg);
}

double window_incident_irradiance(const WeatherRecord& w, const SolarGeometry& g) {
  return w.i_beam * g.cos_theta + w.i_sky * g.f_ss + w.i_ground * g.f_sg;
}

double window_solar_gain(const building::Zone& z, const std::vector<double>& e_t) {
  std::size_t wi = 0;
  double q = 0.0;
  for (const auto& s : z.surfaces)
    for (const auto& w : s.windows) {
      if (wi >= e_t.size())
        throw std::invalid_argument("window_solar_gain: E_t entries missing");
      if (e_t[wi] < 0.0)
        throw std::invalid_argument("window_solar_gain: negative E_t");
      q += w.shgc * w.area * e_t[wi++];
    }
  return q;
}

}  // namespace bem::inputs
