#pragma once
// Linear time-varying state-space assembly from a validated building model.
//
// State order, per zone in declaration order:
//   [T_k, (T_o^j, T_i^j, T_q^j) for each surface j, T_k^int]
// so n_k = 2 + 3*m_k and N = 2n + 3*sum_k m_k.
//
// Input order: [T_amb, T_ground, U_o per exterior surface, per-zone HVAC
// channel carrying the product m_dot_k * U_sa_k].

#include <string>
#include <unordered_map>
#include <vector>

#include "bem/building/model.hpp"
#include "bem/linalg/matrix.hpp"

namespace bem::statespace {

enum class Role { ZoneTemp, SurfOuter, SurfInner, SurfSolar, ZoneLoad };

struct StateId {
  std::size_t zone;     // index into model.zones
  Role role;
  std::size_t surface;  // index into zone.surfaces, Surf* roles only
};

class StateLayout {
 public:
  explicit StateLayout(const building::BuildingModel& model);

  std::size_t size() const { return states_.size(); }
  std::size_t zone_count() const { return zone_temp_.size(); }

  std::size_t zone_temp(std::size_t zone) const { return zone_temp_[zone]; }
  std::size_t zone_load(std::size_t zone) const { return zone_load_[zone]; }
  std::size_t surf_outer(std::size_t zone, std::size_t surf) const {
    return surf_base_[zone] + 3 * surf;
  }
  std::size_t surf_inner(std::size_t zone, std::size_t surf) const {
    return surf_base_[zone] + 3 * surf + 1;
  }
  std::size_t surf_solar(std::size_t zone, std::size_t surf) const {
    return surf_base_[zone] + 3 * surf + 2;
  }

  const StateId& describe(std::size_t index) const { return states_[index]; }
  // "z2.T" / "z2.s3.To" style label, stable across runs.
  std::string label(const building::BuildingModel& model, std::size_t index) const;

  bool is_load_state(std::size_t index) const {
    const Role r = states_[index].role;
    return r == Role::SurfSolar || r == Role::ZoneLoad;
  }

 private:
  std::vector<StateId> states_;
  std::vector<std::size_t> zone_temp_, zone_load_, surf_base_;
};

struct InputLayout {
  std::size_t t_amb = 0;
  std::size_t t_ground = 1;
  // (zone index, surface index) -> input slot for exterior solar gain U_o.
  std::vector<std::pair<std::size_t, std::size_t>> exterior_surfaces;
  std::size_t hvac_base = 0;  // per-zone m_dot*U_sa channels start here
  std::size_t size = 0;

  std::size_t solar_slot(std::size_t ext_ordinal) const { return 2 + ext_ordinal; }
  std::size_t hvac_slot(std::size_t zone) const { return hvac_base + zone; }
};

struct HvacInput {
  std::vector<double> m_dot;  // kg/s per zone
  std::vector<double> u_sa;   // degC per zone
};

struct StateSpaceModel {
  Matrix H;     // N x N
  Matrix B;     // N x P
  Matrix Cobs;  // n x N zonal-temperature selector
  StateLayout layout;
  InputLayout input_layout;
};

InputLayout build_input_layout(const building::BuildingModel& model);

// H(t) and B per the zonal heat-balance rows; only the HVAC mass flow makes
// H time-varying. Load rows (T_q, T_int) are identically zero.
StateSpaceModel assemble_dynamics(const building::BuildingModel& model,
                                  const HvacInput& hvac);

Matrix assemble_observation(const building::BuildingModel& model,
                            const StateLayout& layout);

// Zero-order hold: Phi = exp(H dt), Gamma = (int_0^dt exp(Hs) ds) B, via the
// exponential of the augmented [[H, B], [0, 0]] matrix.
struct Discretized {
  Matrix phi;
  Matrix gamma;
};
Discretized discretize(const Matrix& h, const Matrix& b, double dt);

// Diagnostic heat flow between structure and zone air (not used by the
// filter): sum_j h_i A (T_i - T_k) + sum_w (T_amb - T_k) / R_win.
double structure_heat_flux(const Vector& state, const building::BuildingModel& model,
                           const StateLayout& layout, std::size_t zone,
                           double t_amb);

// H depends on the HVAC record only through the mass flows, so schedules
// that repeat hour patterns hit this cache instead of re-running expm.
class DynamicsCache {
 public:
  DynamicsCache(const building::BuildingModel& model, double dt)
      : model_(model), dt_(dt) {}

  const Discretized& get(const HvacInput& hvac);
  double dt() const { return dt_; }

 private:
  const building::BuildingModel& model_;
  double dt_;
  std::unordered_map<std::string, Discretized> cache_;
};

}  // namespace bem::statespace
