#include "bem/inputs/series.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

#include "bem/io/table.hpp"

namespace bem::inputs {

namespace {

// Howard Hinnant's days-from-civil algorithm.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yr + (m <= 2));
}

}  // namespace

int Timestamp::hour_of_day() const {
  return static_cast<int>(((epoch_s % 86400) + 86400) % 86400 / 3600);
}

int Timestamp::day_of_year() const {
  const std::int64_t days = epoch_s / 86400;
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  return static_cast<int>(days - days_from_civil(y, 1, 1)) + 1;
}

bool Timestamp::is_weekend() const {
  // 1970-01-01 was a Thursday (weekday 4, Monday = 0).
  const std::int64_t days = epoch_s / 86400;
  const int wd = static_cast<int>(((days + 3) % 7 + 7) % 7);
  return wd >= 5;
}

double Timestamp::decimal_hour() const {
  return static_cast<double>(((epoch_s % 86400) + 86400) % 86400) / 3600.0;
}

Timestamp parse_timestamp(const std::string& iso) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0;
  const int n = std::sscanf(iso.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d, &sep,
                            &h, &mi, &s);
  if (n < 6 || (sep != 'T' && sep != ' '))
    throw std::runtime_error("bad ISO-8601 timestamp: '" + iso + "'");
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60)
    throw std::runtime_error("timestamp out of range: '" + iso + "'");
  Timestamp t;
  t.epoch_s = days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
  t.text = iso;
  return t;
}

std::string format_timestamp(std::int64_t epoch_s) {
  int y;
  unsigned mo, d;
  civil_from_days(epoch_s / 86400, y, mo, d);
  const int rem = static_cast<int>(epoch_s % 86400);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d", y, mo, d,
                rem / 3600, rem / 60 % 60, rem % 60);
  return buf;
}

std::vector<WeatherRecord> load_weather(const std::string& path) {
  const io::Table t = io::read_table(path);
  const std::size_t c_ts = t.column("timestamp");
  const std::size_t c_ta = t.column("t_amb_c");
  const std::size_t c_tg = t.column("t_ground_c");
  const std::size_t c_ib = t.column("i_beam");
  const std::size_t c_is = t.column("i_sky");
  const std::size_t c_ig = t.column("i_ground");

  std::vector<WeatherRecord> out;
  out.reserve(t.rows.size());
  std::int64_t spacing = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t line = t.line_numbers[r];
    WeatherRecord w;
    w.t = parse_timestamp(row[c_ts]);
    w.t_amb = io::parse_double(row[c_ta], path, line);
    w.t_ground = io::parse_double(row[c_tg], path, line);
    w.i_beam = io::parse_double(row[c_ib], path, line);
    w.i_sky = io::parse_double(row[c_is], path, line);
    w.i_ground = io::parse_double(row[c_ig], path, line);
    if (w.i_beam < 0.0 || w.i_sky < 0.0 || w.i_ground < 0.0)
      throw std::runtime_error(path + ":" + std::to_string(line) +
                               ": negative irradiance intensity");
    if (!out.empty()) {
      const std::int64_t dt = w.t.epoch_s - out.back().t.epoch_s;
      if (dt <= 0)
        throw std::runtime_error(path + ":" + std::to_string(line) +
                                 ": timestamps must be strictly increasing");
      if (spacing == 0) spacing = dt;
      else if (dt != spacing)
        throw std::runtime_error(path + ":" + std::to_string(line) +
                                 ": non-uniform timestamp spacing");
    }
    out.push_back(std::move(w));
  }
  return out;
}

HvacSeries load_hvac(const std::string& path, const building::BuildingModel& model) {
  const io::Table t = io::read_table(path);
  const std::size_t c_ts = t.column("timestamp");
  const std::size_t c_zn = t.column("zone_id");
  const std::size_t c_md = t.column("m_dot_kg_s");
  const std::size_t c_tu = t.column("t_supply_c");
  const std::size_t n = model.zones.size();

  HvacSeries hs;
  std::vector<std::vector<bool>> seen;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t line = t.line_numbers[r];
    Timestamp ts = parse_timestamp(row[c_ts]);
    if (hs.timestamps.empty() || ts.epoch_s != hs.timestamps.back().epoch_s) {
      if (!hs.timestamps.empty() && ts.epoch_s < hs.timestamps.back().epoch_s)
        throw std::runtime_error(path + ":" + std::to_string(line) +
                                 ": timestamps out of order");
      hs.timestamps.push_back(ts);
      hs.records.push_back({std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)});
      seen.emplace_back(n, false);
    }
    auto it = model.zone_index.find(row[c_zn]);
    if (it == model.zone_index.end())
      throw std::runtime_error(path + ":" + std::to_string(line) +
                               ": unknown zone '" + row[c_zn] + "'");
    const std::size_t k = it->second;
    if (seen.back()[k])
      throw std::runtime_error(path + ":" + std::to_string(line) +
                               ": duplicate entry for zone '" + row[c_zn] + "'");
    seen.back()[k] = true;
    const double m_dot = io::parse_double(row[c_md], path, line);
    if (m_dot < 0.0)
      throw std::runtime_error(path + ":" + std::to_string(line) +
                               ": negative mass flow");
    hs.records.back().m_dot[k] = m_dot;
    hs.records.back().u_sa[k] = io::parse_double(row[c_tu], path, line);
  }
  for (std::size_t r = 0; r < seen.size(); ++r)
    for (std::size_t k = 0; k < n; ++k)
      if (!seen[r][k])
        throw std::runtime_error(path + ": missing HVAC entry for zone '" +
                                 model.zones[k].id + "' at " +
                                 hs.timestamps[r].text);
  return hs;
}

double LoadProfiles::t_int(std::size_t zone, const Timestamp& t) const {
  return zone_int[zone][t.is_weekend() ? 1 : 0][t.hour_of_day()];
}

double LoadProfiles::t_q(std::size_t zone, std::size_t surf, const Timestamp& t) const {
  return surf_q[zone][surf][t.hour_of_day()];
}

LoadProfiles zero_profiles(const building::BuildingModel& model) {
  LoadProfiles p;
  p.zone_int.resize(model.zones.size());
  for (auto& z : p.zone_int) z = {};
  p.surf_q.resize(model.zones.size());
  for (std::size_t k = 0; k < model.zones.size(); ++k)
    p.surf_q[k].assign(model.zones[k].surfaces.size(), {});
  return p;
}

LoadProfiles load_profiles(const std::string& path, const building::BuildingModel& model) {
  LoadProfiles p = zero_profiles(model);
  const io::Table t = io::read_table(path);
  const std::size_t c_en = t.column("entity");
  const std::size_t c_id = t.column("id");
  const std::size_t c_dt = t.column("day_type");
  const std::size_t c_hr = t.column("hour");
  const std::size_t c_vl = t.column("value_w");

  // surface id -> (zone, surface)
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> surf_ix;
  for (std::size_t k = 0; k < model.zones.size(); ++k)
    for (std::size_t j = 0; j < model.zones[k].surfaces.size(); ++j)
      surf_ix[model.zones[k].surfaces[j].id] = {k, j};

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t line = t.line_numbers[r];
    const int hour = static_cast<int>(io::parse_double(row[c_hr], path, line));
    if (hour < 0 || hour > 23)
      throw std::runtime_error(path + ":" + std::to_string(line) + ": hour outside 0..23");
    const double v = io::parse_double(row[c_vl], path, line);
    if (row[c_en] == "zone") {
      auto it = model.zone_index.find(row[c_id]);
      if (it == model.zone_index.end())
        throw std::runtime_error(path + ":" + std::to_string(line) +
                                 ": unknown zone '" + row[c_id] + "'");
      if (row[c_dt] == "weekday" || row[c_dt] == "all")
        p.zone_int[it->second][0][hour] = v;
      if (row[c_dt] == "weekend" || row[c_dt] == "all")
        p.zone_int[it->second][1][hour] = v;
    } else if (row[c_en] == "surface") {
      auto it = surf_ix.find(row[c_id]);
      if (it == surf_ix.end())
        throw std::runtime_error(path + ":" + std::to_string(line) +
                                 ": unknown surface '" + row[c_id] + "'");
      p.surf_q[it->second.first][it->second.second][hour] = v;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(line) +
                               ": entity must be 'zone' or 'surface'");
    }
  }
  return p;
}

}  // namespace bem::inputs
