#include "bem/wcs/subsystem.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace bem::wcs {

using filtering::FilterOptions;
using filtering::FilterState;
using filtering::NoiseSpec;
using statespace::StateSpaceModel;

Partition cluster_states(const StateSpaceModel& ssm, std::uint64_t seed,
                         const LouvainOptions& opt) {
  const Matrix w = adjacency(ssm.H);
  Partition p = louvain(w, seed, opt);

  // States isolated in W cannot be clustered by edge weight; filter them
  // with their zone's temperature state.
  const std::size_t n = w.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += w(i, j);
    if (row == 0.0) {
      const auto& sid = ssm.layout.describe(i);
      p.assignment[i] = p.assignment[ssm.layout.zone_temp(sid.zone)];
    }
  }
  normalize_ids(p);
  p.modularity = modularity(w, p.assignment);
  return p;
}

Matrix restrict_square(const Matrix& m, const std::vector<std::size_t>& indices) {
  Matrix r(indices.size(), indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b)
      r(a, b) = m(indices[a], indices[b]);
  return r;
}

Matrix restrict_rows(const Matrix& m, const std::vector<std::size_t>& indices) {
  Matrix r(indices.size(), m.cols());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t j = 0; j < m.cols(); ++j) r(a, j) = m(indices[a], j);
  return r;
}

std::vector<Subsystem> extract_subsystems(const StateSpaceModel& ssm,
                                          const Partition& partition) {
  const std::size_t N = ssm.layout.size();
  if (partition.assignment.size() != N)
    throw std::invalid_argument("extract_subsystems: partition does not cover the state vector");
  for (std::size_t c : partition.assignment)
    if (c >= partition.cluster_count)
      throw std::invalid_argument("extract_subsystems: cluster id out of range");

  std::vector<Subsystem> subs(partition.cluster_count);
  std::vector<std::size_t> local(N);
  for (std::size_t i = 0; i < N; ++i) {
    local[i] = subs[partition.assignment[i]].indices.size();
    subs[partition.assignment[i]].indices.push_back(i);
  }

  for (std::size_t row = 0; row < ssm.Cobs.rows(); ++row) {
    // Unit selector rows: the single observed index decides the cluster.
    std::size_t obs = N;
    for (std::size_t j = 0; j < N; ++j)
      if (ssm.Cobs(row, j) != 0.0) { obs = j; break; }
    if (obs == N) continue;
    subs[partition.assignment[obs]].observed_rows.push_back(row);
  }

  for (auto& s : subs) {
    s.cobs = Matrix(s.observed_rows.size(), s.indices.size());
    for (std::size_t r = 0; r < s.observed_rows.size(); ++r)
      for (std::size_t a = 0; a < s.indices.size(); ++a)
        s.cobs(r, a) = ssm.Cobs(s.observed_rows[r], s.indices[a]);
  }
  return subs;
}

WcsRun run_wcs_filter(const building::BuildingModel& model,
                      const std::vector<inputs::WeatherRecord>& weather,
                      const inputs::HvacSeries& hvac,
                      const std::vector<Vector>& measurements,
                      const NoiseSpec& noise, const Partition& partition,
                      const FilterOptions& opt) {
  if (weather.size() != hvac.timestamps.size() ||
      weather.size() != measurements.size())
    throw std::runtime_error("run_wcs_filter: series lengths differ");

  const statespace::StateLayout layout(model);
  const statespace::InputLayout il = statespace::build_input_layout(model);
  const std::size_t N = layout.size();

  // Subsystem structure at the first record's design conditions; the
  // per-record restriction below only changes matrix values, not shape.
  StateSpaceModel ssm0 = assemble_dynamics(model, hvac.records.front());
  const std::vector<Subsystem> subs = extract_subsystems(ssm0, partition);

  NoiseSpec ns = noise;
  if (ns.process.empty())
    ns = filtering::default_noise(layout, noise.measurement, opt.load_process_var);

  // Per-cluster noise blocks.
  std::vector<Vector> r_local(subs.size()), q_local(subs.size());
  for (std::size_t c = 0; c < subs.size(); ++c) {
    for (std::size_t row : subs[c].observed_rows)
      r_local[c].push_back(ns.measurement[row]);
    for (std::size_t i : subs[c].indices) q_local[c].push_back(ns.process[i]);
  }

  const double record_dt = weather.size() > 1
      ? static_cast<double>(weather[1].t.epoch_s - weather[0].t.epoch_s)
      : 3600.0;
  const int substeps = std::max(1, static_cast<int>(std::lround(record_dt / opt.dt)));
  const double dt = record_dt / substeps;

  // Discretized per-cluster dynamics, cached on the mass-flow pattern.
  std::unordered_map<std::string, std::vector<statespace::Discretized>> cache;
  auto discretized_for = [&](const statespace::HvacInput& h)
      -> const std::vector<statespace::Discretized>& {
    std::string key(reinterpret_cast<const char*>(h.m_dot.data()),
                    h.m_dot.size() * sizeof(double));
    auto it = cache.find(key);
    if (it == cache.end()) {
      StateSpaceModel ssm = assemble_dynamics(model, h);
      std::vector<statespace::Discretized> ds;
      ds.reserve(subs.size());
      for (const auto& s : subs)
        ds.push_back(statespace::discretize(restrict_square(ssm.H, s.indices),
                                            restrict_rows(ssm.B, s.indices), dt));
      it = cache.emplace(std::move(key), std::move(ds)).first;
    }
    return it->second;
  };

  // Per-cluster filter state from the global initialization.
  const FilterState init = filtering::initial_state(model, layout, opt);
  std::vector<FilterState> fs(subs.size());
  for (std::size_t c = 0; c < subs.size(); ++c) {
    fs[c].mean.resize(subs[c].indices.size());
    fs[c].cov = restrict_square(init.cov, subs[c].indices);
    for (std::size_t a = 0; a < subs[c].indices.size(); ++a)
      fs[c].mean[a] = init.mean[subs[c].indices[a]];
  }

  const auto t0 = std::chrono::steady_clock::now();
  WcsRun out;
  out.partition = partition;
  for (std::size_t r = 0; r < weather.size(); ++r) {
    const Vector u = inputs::assemble_input(model, il, weather[r], hvac.timestamps[r],
                                            hvac.records[r],
                                            inputs::solar_gains(model, il, weather[r]));
    const auto& ds = discretized_for(hvac.records[r]);

    // Clusters are independent within a step.
    for (std::size_t c = 0; c < subs.size(); ++c) {
      for (int s = 0; s < substeps; ++s)
        filtering::predict(fs[c], ds[c].phi, ds[c].gamma, u, q_local[c]);
      if (!subs[c].observed_rows.empty()) {
        Vector z_local(subs[c].observed_rows.size());
        for (std::size_t i = 0; i < z_local.size(); ++i)
          z_local[i] = measurements[r][subs[c].observed_rows[i]];
        filtering::update(fs[c], z_local, subs[c].cobs, r_local[c]);
      }
    }

    // Direct-sum recombination back to the global ordering.
    Vector mean(N, 0.0), var(N, 0.0);
    for (std::size_t c = 0; c < subs.size(); ++c)
      for (std::size_t a = 0; a < subs[c].indices.size(); ++a) {
        mean[subs[c].indices[a]] = fs[c].mean[a];
        var[subs[c].indices[a]] = fs[c].cov(a, a);
      }
    out.combined.timestamps.push_back(weather[r].t);
    out.combined.means.push_back(std::move(mean));
    out.combined.variances.push_back(std::move(var));
    if (opt.store_covariance) {
      Matrix cov(N, N);
      for (std::size_t c = 0; c < subs.size(); ++c)
        for (std::size_t a = 0; a < subs[c].indices.size(); ++a)
          for (std::size_t b = 0; b < subs[c].indices.size(); ++b)
            cov(subs[c].indices[a], subs[c].indices[b]) = fs[c].cov(a, b);
      out.combined.covariances.push_back(std::move(cov));
    }
  }
  out.wall_seconds = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - t0).count();
  return out;
}

ErrorMetric error_metric(const std::vector<Vector>& wcs_means,
                         const std::vector<Vector>& full_means, std::size_t n,
                         const std::vector<std::size_t>& coordinates) {
  if (wcs_means.size() != full_means.size())
    throw std::invalid_argument("error_metric: trajectory lengths differ");
  if (n == 0) throw std::invalid_argument("error_metric: n must be positive");
  ErrorMetric out;
  out.e_mu.reserve(wcs_means.size());
  for (std::size_t t = 0; t < wcs_means.size(); ++t) {
    double sum_sq = 0.0;
    for (std::size_t i : coordinates) {
      const double denom = full_means[t][i];
      if (denom == 0.0) {
        ++out.excluded_total;
        continue;
      }
      const double rel = (wcs_means[t][i] - denom) / denom;
      sum_sq += rel * rel;
    }
    out.e_mu.push_back(std::sqrt(sum_sq) / static_cast<double>(n));
  }
  return out;
}

}  // namespace bem::wcs
