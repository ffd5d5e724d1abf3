#pragma once
// Per-step input assembly and the synthetic ground-truth generator that
// stands in for measured data: it integrates the model with scheduled load
// values injected into the random-walk states and emits noisy zonal
// temperature measurements.

#include <cstdint>

#include "bem/inputs/series.hpp"
#include "bem/inputs/solar.hpp"
#include "bem/statespace/system.hpp"

namespace bem::inputs {

// Input vector for one aligned (weather, hvac) record pair, using
// precomputed exterior solar gains (one per exterior surface, in input
// layout order). Throws on timestamp mismatch.
Vector assemble_input(const building::BuildingModel& model,
                      const statespace::InputLayout& il, const WeatherRecord& w,
                      const Timestamp& hvac_t, const statespace::HvacInput& hvac,
                      const std::vector<double>& u_o);

// Exterior solar gains for every exterior surface at a weather record, in
// input-layout order.
std::vector<double> solar_gains(const building::BuildingModel& model,
                                const statespace::InputLayout& il,
                                const WeatherRecord& w);

struct SimulationOptions {
  double dt = 300.0;         // integration substep, seconds
  bool zero_noise = false;   // emit measurements equal to truth
  // Distribute zone window solar gain evenly over the zone's surfaces and
  // add it to the scheduled T_q values.
  bool window_gain_to_surfaces = true;
};

struct TruthResult {
  std::vector<Timestamp> timestamps;
  std::vector<Vector> states;        // one N-vector per record
  std::vector<Vector> measurements;  // one n-vector per record
  std::vector<double> noise_variance;  // r_k per zone, drawn from the seed
};

// Integrates the ZOH-discretized dynamics over the weather/HVAC series with
// true load values injected each record. Measurement noise is zero-mean
// Gaussian with per-zone variance r_k ~ U[0, 0.5] drawn from the seed.
TruthResult simulate_truth(const building::BuildingModel& model,
                           const std::vector<WeatherRecord>& weather,
                           const HvacSeries& hvac, const LoadProfiles& loads,
                           std::uint64_t seed, const SimulationOptions& opt = {});

}  // namespace bem::inputs
