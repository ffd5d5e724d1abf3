// Command-line front end: validate building descriptions, simulate synthetic
// ground truth, cluster the dynamics into weakly coupled groups, and run the
// full or decomposed state estimator over measurement series.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bem/building/loader.hpp"
#include "bem/filtering/kalman.hpp"
#include "bem/inputs/series.hpp"
#include "bem/inputs/synth.hpp"
#include "bem/inputs/truth.hpp"
#include "bem/io/table.hpp"
#include "bem/linalg/kernels.hpp"
#include "bem/wcs/subsystem.hpp"

namespace {

using namespace bem;

struct RunConfig {
  std::string building;
  std::string weather;
  std::string hvac;
  std::string loads;
  std::string out = ".";
  std::string mode = "full";        // estimate: full | wcs
  std::string emu_states = "all";   // compare: all | zones
  double dt = 300.0;
  std::uint64_t seed = 1;
  bool dump_matrices = false;

  std::uint64_t hash() const {
    std::ostringstream s;
    s << building << '|' << weather << '|' << hvac << '|' << loads << '|'
      << mode << '|' << emu_states << '|' << dt << '|' << seed;
    return io::fnv1a(s.str());
  }
};

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out);
  const std::string path = cfg.out + "/" + name;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  char head[96];
  std::snprintf(head, sizeof head, "# config_hash=%016llx seed=%llu\n",
                static_cast<unsigned long long>(cfg.hash()),
                static_cast<unsigned long long>(cfg.seed));
  f << head;
  f.precision(17);
  return f;
}

building::BuildingModel load_model(const RunConfig& cfg) {
  if (cfg.building.empty())
    throw building::ValidationError({"--building is required"});
  return building::load_building(cfg.building);
}

struct Series {
  std::vector<inputs::WeatherRecord> weather;
  inputs::HvacSeries hvac;
};

Series load_series(const RunConfig& cfg, const building::BuildingModel& model) {
  if (cfg.weather.empty() || cfg.hvac.empty())
    throw building::ValidationError({"--weather and --hvac are required"});
  Series s;
  s.weather = inputs::load_weather(cfg.weather);
  s.hvac = inputs::load_hvac(cfg.hvac, model);
  if (s.weather.size() != s.hvac.timestamps.size())
    throw std::runtime_error("weather and HVAC series lengths differ");
  for (std::size_t i = 0; i < s.weather.size(); ++i)
    if (s.weather[i].t.epoch_s != s.hvac.timestamps[i].epoch_s)
      throw std::runtime_error("weather and HVAC timestamps differ at row " +
                               std::to_string(i + 1));
  return s;
}

void dump_matrix(const RunConfig& cfg, const std::string& name, const Matrix& m) {
  auto f = open_output(cfg, name);
  f << "# coordinate format: row,col,value (" << m.rows() << "x" << m.cols()
    << ")\nrow,col,value\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) f << i << ',' << j << ',' << m(i, j) << '\n';
}

void maybe_dump(const RunConfig& cfg, const statespace::StateSpaceModel& ssm) {
  if (!cfg.dump_matrices) return;
  dump_matrix(cfg, "H.coo", ssm.H);
  dump_matrix(cfg, "B.coo", ssm.B);
  dump_matrix(cfg, "Cobs.coo", ssm.Cobs);
}

statespace::HvacInput design_hvac(const building::BuildingModel& model,
                                  const Series* series) {
  if (series && !series->hvac.records.empty()) return series->hvac.records.front();
  return {std::vector<double>(model.zones.size(), 0.0),
          std::vector<double>(model.zones.size(), 0.0)};
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg) {
  const building::BuildingModel model = load_model(cfg);
  const statespace::StateLayout layout(model);

  std::cout << "building: " << cfg.building << "\nzones: " << model.zones.size()
            << "\nstates: " << layout.size() << "\n";
  for (std::size_t k = 0; k < model.zones.size(); ++k) {
    const auto& z = model.zones[k];
    std::cout << "zone " << z.id << ": surfaces=" << z.surfaces.size()
              << " n_k=" << 2 + 3 * z.surfaces.size()
              << " air_mass=" << z.air_mass << "\n";
    for (const auto& s : z.surfaces) {
      std::cout << "  surface " << s.id << ": net_area=" << s.net_area
                << " R=" << s.resistance << " C=" << s.capacitance;
      if (s.kind == building::SurfaceKind::Underground)
        std::cout << " R_fic=" << s.r_fic;
      std::cout << "\n";
    }
  }
  if (cfg.dump_matrices) {
    const auto ssm = statespace::assemble_dynamics(model, design_hvac(model, nullptr));
    maybe_dump(cfg, ssm);
  }
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  const building::BuildingModel model = load_model(cfg);
  const Series series = load_series(cfg, model);
  const inputs::LoadProfiles loads = cfg.loads.empty()
      ? inputs::zero_profiles(model)
      : inputs::load_profiles(cfg.loads, model);

  inputs::SimulationOptions opt;
  opt.dt = cfg.dt;
  const inputs::TruthResult truth =
      inputs::simulate_truth(model, series.weather, series.hvac, loads, cfg.seed, opt);

  const statespace::StateLayout layout(model);
  if (cfg.dump_matrices)
    maybe_dump(cfg, statespace::assemble_dynamics(model, design_hvac(model, &series)));

  auto tf = open_output(cfg, "truth.csv");
  tf << "timestamp,state_id,value\n";
  for (std::size_t r = 0; r < truth.timestamps.size(); ++r)
    for (std::size_t i = 0; i < truth.states[r].size(); ++i)
      tf << truth.timestamps[r].text << ',' << layout.label(model, i) << ','
         << truth.states[r][i] << '\n';

  auto mf = open_output(cfg, "measurements.csv");
  mf << "timestamp,zone_id,t_c\n";
  for (std::size_t r = 0; r < truth.timestamps.size(); ++r)
    for (std::size_t k = 0; k < model.zones.size(); ++k)
      mf << truth.timestamps[r].text << ',' << model.zones[k].id << ','
         << truth.measurements[r][k] << '\n';

  auto nf = open_output(cfg, "noise.csv");
  nf << "zone_id,variance\n";
  for (std::size_t k = 0; k < model.zones.size(); ++k)
    nf << model.zones[k].id << ',' << truth.noise_variance[k] << '\n';

  std::cout << "simulated " << truth.timestamps.size() << " records, "
            << layout.size() << " states -> " << cfg.out << "\n";
  return 0;
}

int cmd_cluster(const RunConfig& cfg) {
  const building::BuildingModel model = load_model(cfg);
  Series series;
  const bool have_series = !cfg.weather.empty() && !cfg.hvac.empty();
  if (have_series) series = load_series(cfg, model);

  const auto ssm = statespace::assemble_dynamics(
      model, design_hvac(model, have_series ? &series : nullptr));
  maybe_dump(cfg, ssm);

  const wcs::Partition p = wcs::cluster_states(ssm, cfg.seed);

  auto pf = open_output(cfg, "partition.csv");
  pf << "state_index,state_id,cluster_id\n";
  for (std::size_t i = 0; i < p.assignment.size(); ++i)
    pf << i << ',' << ssm.layout.label(model, i) << ',' << p.assignment[i] << '\n';

  // Per-cluster modularity contribution: intra-cluster mass minus the
  // degree-based null model mass, normalized like the global score.
  const Matrix w = wcs::adjacency(ssm.H);
  const std::size_t n = w.rows();
  Vector k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i] += w(i, j);
    two_m += k[i];
  }
  auto cf = open_output(cfg, "clusters.csv");
  cf << "cluster_id,size,member_zones,q_contribution\n";
  const auto groups = p.clusters();
  for (std::size_t c = 0; c < groups.size(); ++c) {
    std::map<std::string, bool> zones;
    double q = 0.0;
    for (std::size_t a : groups[c]) {
      zones[model.zones[ssm.layout.describe(a).zone].id] = true;
      for (std::size_t b : groups[c])
        if (two_m > 0.0) q += (w(a, b) - k[a] * k[b] / two_m) / two_m;
    }
    std::string members;
    for (const auto& [id, unused] : zones) {
      if (!members.empty()) members += ';';
      members += id;
    }
    cf << c << ',' << groups[c].size() << ',' << members << ',' << q << '\n';
  }
  std::cout << "clusters: " << p.cluster_count << "\nmodularity: " << p.modularity
            << "\n";
  return 0;
}

std::vector<Vector> load_measurements(const RunConfig& cfg,
                                      const building::BuildingModel& model,
                                      const std::vector<inputs::WeatherRecord>& weather) {
  const std::string path = cfg.out + "/measurements.csv";
  const io::Table t = io::read_table(path);
  const std::size_t ct = t.column("timestamp");
  const std::size_t cz = t.column("zone_id");
  const std::size_t cv = t.column("t_c");

  std::vector<Vector> z(weather.size(), Vector(model.zones.size(),
                                               std::numeric_limits<double>::quiet_NaN()));
  std::map<std::string, std::size_t> time_index;
  for (std::size_t r = 0; r < weather.size(); ++r)
    time_index[weather[r].t.text] = r;

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto it = time_index.find(t.rows[r][ct]);
    if (it == time_index.end())
      throw std::runtime_error(path + ": timestamp " + t.rows[r][ct] +
                               " not in the weather series");
    const auto zit = model.zone_index.find(t.rows[r][cz]);
    if (zit == model.zone_index.end())
      throw std::runtime_error(path + ": unknown zone " + t.rows[r][cz]);
    z[it->second][zit->second] = io::parse_double(t.rows[r][cv], path, t.line_numbers[r]);
  }
  for (std::size_t r = 0; r < z.size(); ++r)
    for (double v : z[r])
      if (std::isnan(v))
        throw std::runtime_error(path + ": missing measurement at record " +
                                 std::to_string(r + 1));
  return z;
}

Vector load_noise(const RunConfig& cfg, const building::BuildingModel& model) {
  const std::string path = cfg.out + "/noise.csv";
  if (!std::filesystem::exists(path))
    return Vector(model.zones.size(), 0.25);  // fallback when truth is external
  const io::Table t = io::read_table(path);
  const std::size_t cz = t.column("zone_id");
  const std::size_t cv = t.column("variance");
  Vector r(model.zones.size(), 0.25);
  for (std::size_t row = 0; row < t.rows.size(); ++row) {
    const auto it = model.zone_index.find(t.rows[row][cz]);
    if (it == model.zone_index.end())
      throw std::runtime_error(path + ": unknown zone " + t.rows[row][cz]);
    // The filter needs a strictly positive variance even when the simulated
    // noise was zero.
    r[it->second] = std::max(1e-6, io::parse_double(t.rows[row][cv], path,
                                                    t.line_numbers[row]));
  }
  return r;
}

// Truth zone temperatures from a prior simulate run, for RMSE summaries.
std::vector<Vector> try_load_truth(const RunConfig& cfg,
                                   const building::BuildingModel& model,
                                   const statespace::StateLayout& layout,
                                   const std::vector<inputs::WeatherRecord>& weather) {
  const std::string path = cfg.out + "/truth.csv";
  if (!std::filesystem::exists(path)) return {};
  const io::Table t = io::read_table(path);
  const std::size_t ct = t.column("timestamp");
  const std::size_t cs = t.column("state_id");
  const std::size_t cv = t.column("value");

  std::map<std::string, std::size_t> time_index, state_index;
  for (std::size_t r = 0; r < weather.size(); ++r) time_index[weather[r].t.text] = r;
  for (std::size_t i = 0; i < layout.size(); ++i)
    state_index[layout.label(model, i)] = i;

  std::vector<Vector> truth(weather.size(), Vector(layout.size(), 0.0));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto ti = time_index.find(t.rows[r][ct]);
    const auto si = state_index.find(t.rows[r][cs]);
    if (ti == time_index.end() || si == state_index.end()) continue;
    truth[ti->second][si->second] =
        io::parse_double(t.rows[r][cv], path, t.line_numbers[r]);
  }
  return truth;
}

void write_estimates(const RunConfig& cfg, const building::BuildingModel& model,
                     const statespace::StateLayout& layout,
                     const filtering::FilterRun& run, const std::string& name) {
  auto f = open_output(cfg, name);
  f << "timestamp,state_id,mean,variance\n";
  for (std::size_t r = 0; r < run.timestamps.size(); ++r)
    for (std::size_t i = 0; i < run.means[r].size(); ++i)
      f << run.timestamps[r].text << ',' << layout.label(model, i) << ','
        << run.means[r][i] << ',' << run.variances[r][i] << '\n';
}

void write_rmse(const RunConfig& cfg, const building::BuildingModel& model,
                const statespace::StateLayout& layout,
                const filtering::FilterRun& run, const std::vector<Vector>& truth,
                const std::string& name) {
  if (truth.empty()) return;
  auto f = open_output(cfg, name);
  f << "zone_id,rmse_temp_c\n";
  for (std::size_t k = 0; k < model.zones.size(); ++k) {
    double se = 0.0;
    for (std::size_t r = 0; r < run.means.size(); ++r) {
      const double d = run.means[r][layout.zone_temp(k)] -
                       truth[r][layout.zone_temp(k)];
      se += d * d;
    }
    f << model.zones[k].id << ',' << std::sqrt(se / double(run.means.size())) << '\n';
  }
}

int cmd_estimate(const RunConfig& cfg) {
  if (cfg.mode != "full" && cfg.mode != "wcs")
    throw building::ValidationError({"--mode must be full or wcs"});
  const building::BuildingModel model = load_model(cfg);
  const Series series = load_series(cfg, model);
  const statespace::StateLayout layout(model);

  const auto measurements = load_measurements(cfg, model, series.weather);
  const filtering::NoiseSpec noise =
      filtering::default_noise(layout, load_noise(cfg, model));
  filtering::FilterOptions opt;
  opt.dt = cfg.dt;

  filtering::FilterRun run;
  if (cfg.mode == "full") {
    run = filtering::run_filter(model, series.weather, series.hvac, measurements,
                                noise, opt);
  } else {
    const auto ssm = statespace::assemble_dynamics(model, design_hvac(model, &series));
    maybe_dump(cfg, ssm);
    const wcs::Partition p = wcs::cluster_states(ssm, cfg.seed);
    run = wcs::run_wcs_filter(model, series.weather, series.hvac, measurements,
                              noise, p, opt).combined;
  }

  write_estimates(cfg, model, layout, run, "estimate_" + cfg.mode + ".csv");
  const auto truth = try_load_truth(cfg, model, layout, series.weather);
  write_rmse(cfg, model, layout, run, truth, "rmse_" + cfg.mode + ".csv");
  std::cout << "estimated " << run.timestamps.size() << " records (mode="
            << cfg.mode << ") -> " << cfg.out << "\n";
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  if (cfg.emu_states != "all" && cfg.emu_states != "zones")
    throw building::ValidationError({"--emu-states must be all or zones"});
  const building::BuildingModel model = load_model(cfg);
  const Series series = load_series(cfg, model);
  const statespace::StateLayout layout(model);

  const auto measurements = load_measurements(cfg, model, series.weather);
  const filtering::NoiseSpec noise =
      filtering::default_noise(layout, load_noise(cfg, model));
  filtering::FilterOptions opt;
  opt.dt = cfg.dt;

  const auto t0 = std::chrono::steady_clock::now();
  const filtering::FilterRun full = filtering::run_filter(
      model, series.weather, series.hvac, measurements, noise, opt);
  const double full_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto ssm = statespace::assemble_dynamics(model, design_hvac(model, &series));
  maybe_dump(cfg, ssm);
  const wcs::Partition p = wcs::cluster_states(ssm, cfg.seed);
  const wcs::WcsRun wcs_run = wcs::run_wcs_filter(
      model, series.weather, series.hvac, measurements, noise, p, opt);

  std::vector<std::size_t> coords;
  if (cfg.emu_states == "zones") {
    for (std::size_t k = 0; k < model.zones.size(); ++k)
      coords.push_back(layout.zone_temp(k));
  } else {
    for (std::size_t i = 0; i < layout.size(); ++i) coords.push_back(i);
  }
  const wcs::ErrorMetric em = wcs::error_metric(
      wcs_run.combined.means, full.means, model.zones.size(), coords);

  auto ef = open_output(cfg, "emu.csv");
  ef << "timestamp,e_mu\n";
  for (std::size_t r = 0; r < em.e_mu.size(); ++r)
    ef << full.timestamps[r].text << ',' << em.e_mu[r] << '\n';

  const double ratio = wcs_run.wall_seconds / std::max(full_s, 1e-12);
  auto rf = open_output(cfg, "compare.txt");
  rf << "records: " << full.timestamps.size() << "\nstates: " << layout.size()
     << "\nclusters: " << p.cluster_count << "\nmodularity: " << p.modularity
     << "\nfull_filter_seconds: " << full_s
     << "\nwcs_filter_seconds: " << wcs_run.wall_seconds
     << "\nspeedup: " << full_s / std::max(wcs_run.wall_seconds, 1e-12)
     << "\nexcluded_coordinates_total: " << em.excluded_total << "\n";
  std::cout << "full: " << full_s << " s, wcs: " << wcs_run.wall_seconds
            << " s, ratio " << ratio << " -> " << cfg.out << "\n";
  return 0;
}

int cmd_bench(const RunConfig& cfg) {
  // Self-contained benchmark on a generated building large enough for the
  // decomposition to pay off.
  const synth::BuildingSpec spec{8, 8, true, true, cfg.seed};
  const building::BuildingModel model = synth::grid_building(spec);
  const statespace::StateLayout layout(model);
  const auto weather = synth::synthetic_weather(48, cfg.seed);
  const auto hvac = synth::synthetic_hvac(model, weather, cfg.seed);
  const auto loads = synth::synthetic_loads(model, cfg.seed);
  const auto truth = inputs::simulate_truth(model, weather, hvac, loads, cfg.seed);

  const filtering::NoiseSpec noise =
      filtering::default_noise(layout, truth.noise_variance);
  filtering::FilterOptions opt;
  opt.dt = 3600.0;

  const auto ssm = statespace::assemble_dynamics(model, hvac.records.front());
  const wcs::Partition p = wcs::cluster_states(ssm, cfg.seed);

  const auto t0 = std::chrono::steady_clock::now();
  const filtering::FilterRun full = filtering::run_filter(
      model, weather, hvac, truth.measurements, noise, opt);
  const double full_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  (void)full;

  const wcs::WcsRun wcs_run = wcs::run_wcs_filter(
      model, weather, hvac, truth.measurements, noise, p, opt);

  const double ratio = wcs_run.wall_seconds / std::max(full_s, 1e-12);
  auto rf = open_output(cfg, "bench.txt");
  rf << "states: " << layout.size() << "\nzones: " << model.zones.size()
     << "\nclusters: " << p.cluster_count << "\nrecords: " << weather.size()
     << "\nkernel_backend: " << kernels::active().name
     << "\nfull_filter_seconds: " << full_s
     << "\nwcs_filter_seconds: " << wcs_run.wall_seconds << "\nratio: " << ratio
     << "\n";
  std::cout << "N=" << layout.size() << " clusters=" << p.cluster_count
            << " full=" << full_s << " s wcs=" << wcs_run.wall_seconds
            << " s ratio=" << ratio << "\n";
  if (ratio >= 1.0) {
    std::cerr << "bench: decomposed filtering was not faster (ratio " << ratio
              << ")\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-order building thermal modeling, clustering, and "
               "state estimation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");

  RunConfig cfg;
  app.add_option("--building", cfg.building, "Building description (JSON)")
      ->configurable(true);
  app.add_option("--weather", cfg.weather, "Weather series (CSV)")->configurable(true);
  app.add_option("--hvac", cfg.hvac, "HVAC series (CSV, long format)")
      ->configurable(true);
  app.add_option("--loads", cfg.loads, "Load profiles (CSV)")->configurable(true);
  app.add_option("--dt", cfg.dt, "Integration substep in seconds")
      ->configurable(true)
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "RNG seed")->configurable(true);
  app.add_option("--out", cfg.out, "Output directory")->configurable(true);
  app.add_option("--mode", cfg.mode, "Estimator: full or wcs")->configurable(true);
  app.add_option("--emu-states", cfg.emu_states,
                 "Divergence coordinates: all or zones")
      ->configurable(true);
  app.add_flag("--dump-matrices", cfg.dump_matrices,
               "Write H/B/Cobs in sparse coordinate format")
      ->configurable(true);

  auto* validate = app.add_subcommand("validate", "Check a building description");
  auto* simulate = app.add_subcommand("simulate", "Generate synthetic truth and "
                                                  "noisy measurements");
  auto* cluster = app.add_subcommand("cluster", "Partition the dynamics into "
                                                "weakly coupled groups");
  auto* estimate = app.add_subcommand("estimate", "Run the state estimator");
  auto* compare = app.add_subcommand("compare", "Full vs decomposed estimator "
                                                "divergence and timing");
  auto* bench = app.add_subcommand("bench", "Built-in large-model benchmark");
  for (CLI::App* sc : {validate, simulate, cluster, estimate, compare, bench})
    sc->fallthrough();  // shared options live on the parent app

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (cluster->parsed()) return cmd_cluster(cfg);
    if (estimate->parsed()) return cmd_estimate(cfg);
    if (compare->parsed()) return cmd_compare(cfg);
    if (bench->parsed()) return cmd_bench(cfg);
  } catch (const building::ValidationError& e) {
    for (const auto& msg : e.errors()) std::cerr << "error: " << msg << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
