#pragma once
// Per-cluster restriction of the state-space model, independent per-cluster
// filtering with direct-sum recombination, and the divergence metric between
// the decomposed and full filters.

#include "bem/filtering/kalman.hpp"
#include "bem/wcs/graph.hpp"

namespace bem::wcs {

struct Subsystem {
  std::vector<std::size_t> indices;        // global state indices, ascending
  std::vector<std::size_t> observed_rows;  // rows of the full Cobs kept here
  Matrix cobs;                             // local observation selector
};

// WCS partition for a building: Louvain on adjacency(H) at the given design
// conditions, with states isolated in W attached to their zone's
// temperature-state cluster afterwards.
Partition cluster_states(const statespace::StateSpaceModel& ssm, std::uint64_t seed,
                         const LouvainOptions& opt = {});

// Restriction of the observation structure to each cluster. Cross-cluster H
// entries are dropped at discretization time (see run_wcs_filter).
std::vector<Subsystem> extract_subsystems(const statespace::StateSpaceModel& ssm,
                                          const Partition& partition);

// Restrict a square matrix to an index subset (dropping cross entries).
Matrix restrict_square(const Matrix& m, const std::vector<std::size_t>& indices);
// Gather rows of a matrix.
Matrix restrict_rows(const Matrix& m, const std::vector<std::size_t>& indices);

struct WcsRun {
  filtering::FilterRun combined;       // means/variances in global ordering
  Partition partition;
  double wall_seconds = 0.0;
};

// Runs the module-filtering recursion independently per cluster and
// recombines per step by direct sum: E(x) = (+)_j E(y_j), Sigma block
// diagonal (only the diagonal is exported per record).
WcsRun run_wcs_filter(const building::BuildingModel& model,
                      const std::vector<inputs::WeatherRecord>& weather,
                      const inputs::HvacSeries& hvac,
                      const std::vector<Vector>& measurements,
                      const filtering::NoiseSpec& noise, const Partition& partition,
                      const filtering::FilterOptions& opt = {});

// e_mu(t) = (1/n) || (wcs - full) / full ||_2 over the compared coordinates;
// coordinates with zero full-filter denominator are excluded (counted in
// excluded_total).
struct ErrorMetric {
  std::vector<double> e_mu;  // one value per step
  std::size_t excluded_total = 0;
};

ErrorMetric error_metric(const std::vector<Vector>& wcs_means,
                         const std::vector<Vector>& full_means, std::size_t n,
                         const std::vector<std::size_t>& coordinates);

}  // namespace bem::wcs
