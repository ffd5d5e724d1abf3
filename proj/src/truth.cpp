#include "bem/inputs/truth.hpp"

#include <cmath>
#include <stdexcept>

#include "bem/io/rng.hpp"

namespace bem::inputs {

using building::BuildingModel;
using building::SurfaceKind;
using statespace::InputLayout;

std::vector<double> solar_gains(const BuildingModel& model, const InputLayout& il,
                                const WeatherRecord& w) {
  std::vector<double> u_o;
  u_o.reserve(il.exterior_surfaces.size());
  for (const auto& [k, j] : il.exterior_surfaces) {
    const auto& s = model.zones[k].surfaces[j];
    u_o.push_back(exterior_solar_gain(s, w, solar_geometry(s, model.location, w.t)));
  }
  return u_o;
}

Vector assemble_input(const BuildingModel& model, const InputLayout& il,
                      const WeatherRecord& w, const Timestamp& hvac_t,
                      const statespace::HvacInput& hvac,
                      const std::vector<double>& u_o) {
  if (w.t.epoch_s != hvac_t.epoch_s)
    throw std::runtime_error("assemble_input: weather (" + w.t.text +
                             ") and HVAC (" + hvac_t.text + ") timestamps differ");
  if (u_o.size() != il.exterior_surfaces.size())
    throw std::invalid_argument("assemble_input: U_o count mismatch");
  Vector u(il.size, 0.0);
  u[il.t_amb] = w.t_amb;
  u[il.t_ground] = w.t_ground;
  for (std::size_t e = 0; e < u_o.size(); ++e) u[il.solar_slot(e)] = u_o[e];
  for (std::size_t k = 0; k < model.zones.size(); ++k)
    u[il.hvac_slot(k)] = hvac.m_dot[k] * hvac.u_sa[k];
  return u;
}

namespace {

// True load values for one record: scheduled T_int / T_q plus the zone
// window gain spread evenly across the zone's surfaces.
void inject_loads(const BuildingModel& model, const statespace::StateLayout& layout,
                  const LoadProfiles& loads, const WeatherRecord& w,
                  const SimulationOptions& opt, Vector& x) {
  for (std::size_t k = 0; k < model.zones.size(); ++k) {
    const auto& z = model.zones[k];
    x[layout.zone_load(k)] = loads.t_int(k, w.t);

    double per_surface_gain = 0.0;
    if (opt.window_gain_to_surfaces) {
      std::vector<double> e_t;
      for (const auto& s : z.surfaces) {
        if (s.windows.empty()) continue;
        const SolarGeometry g = solar_geometry(s, model.location, w.t);
        for (std::size_t wi = 0; wi < s.windows.size(); ++wi)
          e_t.push_back(window_incident_irradiance(w, g));
      }
      if (!e_t.empty())
        per_surface_gain = window_solar_gain(z, e_t) / static_cast<double>(z.surfaces.size());
    }
    for (std::size_t j = 0; j < z.surfaces.size(); ++j)
      x[layout.surf_solar(k, j)] = loads.t_q(k, j, w.t) + per_surface_gain;
  }
}

}  // namespace

TruthResult simulate_truth(const BuildingModel& model,
                           const std::vector<WeatherRecord>& weather,
                           const HvacSeries& hvac, const LoadProfiles& loads,
                           std::uint64_t seed, const SimulationOptions& opt) {
  if (weather.size() != hvac.timestamps.size())
    throw std::runtime_error("simulate_truth: weather and HVAC series lengths differ");
  if (weather.empty()) throw std::runtime_error("simulate_truth: empty series");

  const statespace::StateLayout layout(model);
  const InputLayout il = statespace::build_input_layout(model);
  const std::size_t n = model.zones.size();

  const double record_dt = weather.size() > 1
      ? static_cast<double>(weather[1].t.epoch_s - weather[0].t.epoch_s)
      : 3600.0;
  const int substeps = std::max(1, static_cast<int>(std::lround(record_dt / opt.dt)));
  statespace::DynamicsCache cache(model, record_dt / substeps);

  io::Rng rng(seed);
  TruthResult out;
  out.noise_variance.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.noise_variance[k] = opt.zero_noise ? 0.0 : rng.uniform(0.0, 0.5);

  // Initial state: everything at the zone setpoints, loads from schedule.
  Vector x(layout.size(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double sp = model.zones[k].setpoint;
    x[layout.zone_temp(k)] = sp;
    for (std::size_t j = 0; j < model.zones[k].surfaces.size(); ++j) {
      x[layout.surf_outer(k, j)] = sp;
      x[layout.surf_inner(k, j)] = sp;
    }
  }

  for (std::size_t r = 0; r < weather.size(); ++r) {
    const WeatherRecord& w = weather[r];
    inject_loads(model, layout, loads, w, opt, x);
    const Vector u = assemble_input(model, il, w, hvac.timestamps[r], hvac.records[r],
                                    solar_gains(model, il, w));
    const statespace::Discretized& d = cache.get(hvac.records[r]);
    for (int s = 0; s < substeps; ++s) {
      Vector xn = multiply(d.phi, x);
      const Vector gu = multiply(d.gamma, u);
      for (std::size_t i = 0; i < xn.size(); ++i) xn[i] += gu[i];
      x = std::move(xn);
    }
    for (double v : x)
      if (!std::isfinite(v))
        throw std::runtime_error("simulate_truth: non-finite state at " + w.t.text);

    Vector z(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double noise = opt.zero_noise
          ? 0.0 : std::sqrt(out.noise_variance[k]) * rng.gaussian();
      z[k] = x[layout.zone_temp(k)] + noise;
    }
    out.timestamps.push_back(w.t);
    out.states.push_back(x);
    out.measurements.push_back(std::move(z));
  }
  return out;
}

}  // namespace bem::inputs
