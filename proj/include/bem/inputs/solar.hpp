#pragma once
// Solar incidence geometry and the exterior / window gain formulas.

#include "bem/building/model.hpp"
#include "bem/inputs/series.hpp"

namespace bem::inputs {

struct SolarGeometry {
  double cos_theta = 0.0;       // incidence cosine, clamped to [0, 1]
  double sunlit_fraction = 1.0; // A_s / A, no shading engine by default
  double f_ss = 0.5;            // surface-sky angle factor
  double f_sg = 0.5;            // surface-ground angle factor
};

// Tilt-derived angle factors plus incidence from a declination / hour-angle
// solar position model. Negative incidence or sun below horizon clamps
// cos_theta to 0.
SolarGeometry solar_geometry(const building::Surface& s,
                             const building::Location& loc, const Timestamp& t);

// U_o = alpha * (I_b (A_s/A) cos(theta) + I_s F_ss + I_g F_sg), exterior only.
double exterior_solar_gain(const building::Surface& s, const WeatherRecord& w,
                           const SolarGeometry& g);

// Total incident irradiance on a (vertical-by-default) window carried by
// surface s, used for the window gain of the synthetic-truth generator.
double window_incident_irradiance(const WeatherRecord& w, const SolarGeometry& g);

// Q_isol = sum_w SHGC A E_t over a zone's windows, E_t per window.
double window_solar_gain(const building::Zone& z, const std::vector<double>& e_t);

}  // namespace bem::inputs
