#pragma once
// Weather, HVAC, and load-profile time series.
//
// Weather file columns: timestamp, t_amb_c, t_ground_c, i_beam, i_sky, i_ground
// HVAC file columns (long): timestamp, zone_id, m_dot_kg_s, t_supply_c
// Load file columns: entity, id, day_type, hour, value_w
//   entity "zone": id is a zone id, day_type weekday|weekend, value is the
//     true non-envelope load T_int for that hour of day.
//   entity "surface": id is a surface id, day_type "all", value is the true
//     interior solar gain T_q for that hour of day.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bem/building/model.hpp"
#include "bem/statespace/system.hpp"

namespace bem::inputs {

struct Timestamp {
  std::int64_t epoch_s = 0;  // seconds since 1970-01-01T00:00:00
  std::string text;          // original ISO-8601 spelling

  int hour_of_day() const;
  int day_of_year() const;  // 1-based
  bool is_weekend() const;
  double decimal_hour() const;
};

Timestamp parse_timestamp(const std::string& iso);
std::string format_timestamp(std::int64_t epoch_s);

struct WeatherRecord {
  Timestamp t;
  double t_amb = 0.0;     // degC
  double t_ground = 0.0;  // degC
  double i_beam = 0.0;
  double i_sky = 0.0;
  double i_ground = 0.0;
};

// Parsed, strictly increasing, uniformly spaced. Throws on gaps, duplicates,
// negative intensities, or missing columns.
std::vector<WeatherRecord> load_weather(const std::string& path);

struct HvacSeries {
  std::vector<Timestamp> timestamps;
  std::vector<statespace::HvacInput> records;  // one per timestamp
};

HvacSeries load_hvac(const std::string& path, const building::BuildingModel& model);

// Hour-of-day load schedules; zones keyed by day type, surfaces shared.
struct LoadProfiles {
  // [zone][day_type 0=weekday 1=weekend][hour]
  std::vector<std::array<std::array<double, 24>, 2>> zone_int;
  // [zone][surface][hour]
  std::vector<std::vector<std::array<double, 24>>> surf_q;

  double t_int(std::size_t zone, const Timestamp& t) const;
  double t_q(std::size_t zone, std::size_t surf, const Timestamp& t) const;
};

LoadProfiles load_profiles(const std::string& path, const building::BuildingModel& model);
LoadProfiles zero_profiles(const building::BuildingModel& model);

}  // namespace bem::inputs
