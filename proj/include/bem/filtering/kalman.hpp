#pragma once
// Discrete-time Kalman recursion over the ZOH-discretized dynamics. The
// covariance is symmetrized after every operation and the innovation system
// is solved through a Cholesky factorization, never an explicit inverse.

#include <cstdint>
#include <vector>

#include "bem/inputs/truth.hpp"
#include "bem/linalg/matrix.hpp"
#include "bem/statespace/system.hpp"

namespace bem::filtering {

struct FilterState {
  Vector mean;
  Matrix cov;
  std::int64_t t = 0;  // epoch seconds
};

struct NoiseSpec {
  Vector measurement;  // r_k per observed row (diagonal R)
  Vector process;      // per-state diagonal of Qproc, one step
};

// Default noise per the random-walk load model: Qproc is zero except on the
// T_q / T_int rows, where tracking of slowly varying loads needs a nonzero
// floor.
NoiseSpec default_noise(const statespace::StateLayout& layout,
                        const Vector& measurement_variance,
                        double load_process_var = 1.0);

// mean <- Phi mean + Gamma u; cov <- Phi cov Phi^T + diag(q). Throws on
// non-finite results.
void predict(FilterState& fs, const Matrix& phi, const Matrix& gamma,
             const Vector& u, const Vector& q_diag);

// Measurement update with selector rows cobs and diagonal R. Throws when the
// innovation matrix is singular.
void update(FilterState& fs, const Vector& z, const Matrix& cobs, const Vector& r_diag);

struct FilterOptions {
  double dt = 300.0;               // substep, seconds
  double init_temp_var = 1.0;
  double init_load_var = 1e4;
  double load_process_var = 1.0;
  bool store_covariance = false;   // keep full per-step covariances
};

struct FilterRun {
  std::vector<inputs::Timestamp> timestamps;
  std::vector<Vector> means;       // posterior per record
  std::vector<Vector> variances;   // posterior diag(cov) per record
  std::vector<Matrix> covariances; // populated when store_covariance
};

FilterState initial_state(const building::BuildingModel& model,
                          const statespace::StateLayout& layout,
                          const FilterOptions& opt);

// Full-system filter over aligned weather/HVAC/measurement series.
// measurements[r][k] observes zone k's temperature at record r.
FilterRun run_filter(const building::BuildingModel& model,
                     const std::vector<inputs::WeatherRecord>& weather,
                     const inputs::HvacSeries& hvac,
                     const std::vector<Vector>& measurements,
                     const NoiseSpec& noise, const FilterOptions& opt = {});

}  // namespace bem::filtering
