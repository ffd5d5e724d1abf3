#include "bem/statespace/system.hpp"

#include <stdexcept>

namespace bem::statespace {

using building::BuildingModel;
using building::SurfaceKind;

StateLayout::StateLayout(const BuildingModel& model) {
  if (!model.validated)
    throw std::invalid_argument("StateLayout: model must be validated first");
  for (std::size_t k = 0; k < model.zones.size(); ++k) {
    const auto& z = model.zones[k];
    zone_temp_.push_back(states_.size());
    states_.push_back({k, Role::ZoneTemp, 0});
    surf_base_.push_back(states_.size());
    for (std::size_t j = 0; j < z.surfaces.size(); ++j) {
      states_.push_back({k, Role::SurfOuter, j});
      states_.push_back({k, Role::SurfInner, j});
      states_.push_back({k, Role::SurfSolar, j});
    }
    zone_load_.push_back(states_.size());
    states_.push_back({k, Role::ZoneLoad, 0});
  }
}

std::string StateLayout::label(const BuildingModel& model, std::size_t index) const {
  const StateId& s = states_[index];
  const auto& z = model.zones[s.zone];
  switch (s.role) {
    case Role::ZoneTemp: return z.id + ".T";
    case Role::ZoneLoad: return z.id + ".Tint";
    case Role::SurfOuter: return z.id + "." + z.surfaces[s.surface].id + ".To";
    case Role::SurfInner: return z.id + "." + z.surfaces[s.surface].id + ".Ti";
    case Role::SurfSolar: return z.id + "." + z.surfaces[s.surface].id + ".Tq";
  }
  return "?";
}

InputLayout build_input_layout(const BuildingModel& model) {
  InputLayout il;
  for (std::size_t k = 0; k < model.zones.size(); ++k)
    for (std::size_t j = 0; j < model.zones[k].surfaces.size(); ++j)
      if (model.zones[k].surfaces[j].kind == SurfaceKind::Exterior)
        il.exterior_surfaces.emplace_back(k, j);
  il.hvac_base = 2 + il.exterior_surfaces.size();
  il.size = il.hvac_base + model.zones.size();
  return il;
}

StateSpaceModel assemble_dynamics(const BuildingModel& model, const HvacInput& hvac) {
  if (!model.validated)
    throw std::invalid_argument("assemble_dynamics: model must be validated");
  const std::size_t n = model.zones.size();
  if (hvac.m_dot.size() != n || hvac.u_sa.size() != n)
    throw std::invalid_argument("assemble_dynamics: HVAC record does not cover every zone");
  for (double m : hvac.m_dot)
    if (m < 0.0) throw std::invalid_argument("assemble_dynamics: negative mass flow");

  StateLayout layout(model);
  InputLayout il = build_input_layout(model);
  const std::size_t N = layout.size();

  Matrix H(N, N), B(N, il.size);

  std::size_t ext_ordinal = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& z = model.zones[k];
    const double mcp = z.air_mass * model.cpa;
    const std::size_t rk = layout.zone_temp(k);

    // Zone air row.
    double diag = -hvac.m_dot[k] / z.air_mass;
    for (std::size_t j = 0; j < z.surfaces.size(); ++j) {
      const auto& s = z.surfaces[j];
      const double g = s.net_area * s.h_i / mcp;
      diag -= g;
      H(rk, layout.surf_inner(k, j)) += g;
      for (const auto& w : s.windows) {
        const double gw = 1.0 / (w.resistance * mcp);
        diag -= gw;
        B(rk, il.t_amb) += gw;
      }
    }
    H(rk, rk) = diag;
    H(rk, layout.zone_load(k)) = 1.0 / mcp;
    // Supply-air heating rate m_dot*cpa*(U_sa - T_k) / (M_k cpa); the input
    // channel carries the product m_dot*U_sa so the gain is constant in B.
    B(rk, il.hvac_slot(k)) = 1.0 / z.air_mass;

    // Surface rows.
    for (std::size_t j = 0; j < z.surfaces.size(); ++j) {
      const auto& s = z.surfaces[j];
      const std::size_t ro = layout.surf_outer(k, j);
      const std::size_t ri = layout.surf_inner(k, j);
      const double cond = 1.0 / (s.resistance * s.capacitance);

      // Outer node: conduction to the inner node plus film coupling to
      // whatever sits outside (ambient, adjacent zone air, or the ground
      // through the fictitious resistance).
      H(ro, ri) = cond;
      switch (s.kind) {
        case SurfaceKind::Exterior: {
          const double film = s.h_o * s.net_area / s.capacitance;
          H(ro, ro) = -(film + cond);
          B(ro, il.t_amb) += film;
          B(ro, il.solar_slot(ext_ordinal)) = 1.0 / s.capacitance;
          ++ext_ordinal;
          break;
        }
        case SurfaceKind::Interior: {
          const double film = s.h_o * s.net_area / s.capacitance;
          H(ro, ro) = -(film + cond);
          const std::size_t adj = model.zone_index.at(s.adjacent_zone);
          H(ro, layout.zone_temp(adj)) += film;
          break;
        }
        case SurfaceKind::Underground: {
          const double gfic = 1.0 / (s.r_fic * s.capacitance);
          H(ro, ro) = -(gfic + cond);
          B(ro, il.t_ground) += gfic;
          break;
        }
      }

      // Inner node.
      const double film_i = s.h_i * s.net_area / s.capacitance;
      H(ri, ri) = -(film_i + cond);
      H(ri, ro) = cond;
      H(ri, rk) = film_i;
      H(ri, layout.surf_solar(k, j)) = 1.0 / s.capacitance;
    }
    // T_q and T_int rows stay zero: random-walk load states.
  }

  StateSpaceModel ssm{std::move(H), std::move(B),
                      assemble_observation(model, layout), std::move(layout),
                      std::move(il)};
  return ssm;
}

Matrix assemble_observation(const BuildingModel& model, const StateLayout& layout) {
  Matrix c(model.zones.size(), layout.size());
  for (std::size_t k = 0; k < model.zones.size(); ++k)
    c(k, layout.zone_temp(k)) = 1.0;
  return c;
}

Discretized discretize(const Matrix& h, const Matrix& b, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("discretize: dt must be > 0");
  if (!h.all_finite() || !b.all_finite())
    throw std::runtime_error("discretize: non-finite entries");
  const std::size_t n = h.rows();
  const std::size_t p = b.cols();
  Matrix aug(n + p, n + p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = h(i, j) * dt;
    for (std::size_t j = 0; j < p; ++j) aug(i, n + j) = b(i, j) * dt;
  }
  const Matrix e = expm(aug);
  Discretized d{Matrix(n, n), Matrix(n, p)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d.phi(i, j) = e(i, j);
    for (std::size_t j = 0; j < p; ++j) d.gamma(i, j) = e(i, n + j);
  }
  return d;
}

double structure_heat_flux(const Vector& state, const BuildingModel& model,
                           const StateLayout& layout, std::size_t zone,
                           double t_amb) {
  const auto& z = model.zones[zone];
  const double tk = state[layout.zone_temp(zone)];
  double q = 0.0;
  for (std::size_t j = 0; j < z.surfaces.size(); ++j) {
    const auto& s = z.surfaces[j];
    q += s.h_i * s.net_area * (state[layout.surf_inner(zone, j)] - tk);
    for (const auto& w : s.windows) q += (t_amb - tk) / w.resistance;
  }
  return q;
}

const Discretized& DynamicsCache::get(const HvacInput& hvac) {
  std::string key(reinterpret_cast<const char*>(hvac.m_dot.data()),
                  hvac.m_dot.size() * sizeof(double));
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    StateSpaceModel ssm = assemble_dynamics(model_, hvac);
    it = cache_.emplace(std::move(key), discretize(ssm.H, ssm.B, dt_)).first;
  }
  return it->second;
}

}  // namespace bem::statespace
