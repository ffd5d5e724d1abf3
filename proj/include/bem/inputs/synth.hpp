#pragma once
// Deterministic synthetic corpus: grid buildings with inter-zone coupling,
// year-long weather, occupancy-shaped HVAC and load schedules. Stands in for
// measured data in tests and benchmarks.

#include <cstdint>

#include "bem/building/model.hpp"
#include "bem/inputs/series.hpp"

namespace bem::synth {

struct BuildingSpec {
  std::size_t grid_x = 4;
  std::size_t grid_y = 3;
  bool windows = true;        // exterior surfaces on the south edge get one
  bool underground = true;    // first-row zones get an underground floor
  std::uint64_t seed = 0;     // perturbs areas/masses for variety
};

// Validated grid building: each zone owns interior surfaces toward its grid
// neighbors, boundary zones get exterior walls, n = grid_x * grid_y zones.
building::BuildingModel grid_building(const BuildingSpec& spec);

// Hourly records starting 2021-01-01, seasonal + diurnal ambient cycle,
// monthly ground temperatures linearly interpolated to the hour grid,
// daylight-shaped irradiance.
std::vector<inputs::WeatherRecord> synthetic_weather(std::size_t hours,
                                                     std::uint64_t seed);

// Occupancy-scheduled supply flow and temperature per zone, aligned to the
// weather timestamps.
inputs::HvacSeries synthetic_hvac(const building::BuildingModel& model,
                                  const std::vector<inputs::WeatherRecord>& weather,
                                  std::uint64_t seed);

// Weekday/weekend load schedules with midday peaks.
inputs::LoadProfiles synthetic_loads(const building::BuildingModel& model,
                                     std::uint64_t seed);

}  // namespace bem::synth
