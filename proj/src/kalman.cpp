#include "bem/filtering/kalman.hpp"

#include <cmath>
#include <stdexcept>

#include "bem/linalg/kernels.hpp"

namespace bem::filtering {

using statespace::StateLayout;

NoiseSpec default_noise(const StateLayout& layout, const Vector& measurement_variance,
                        double load_process_var) {
  NoiseSpec ns;
  ns.measurement = measurement_variance;
  ns.process.assign(layout.size(), 0.0);
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (layout.is_load_state(i)) ns.process[i] = load_process_var;
  return ns;
}

void predict(FilterState& fs, const Matrix& phi, const Matrix& gamma,
             const Vector& u, const Vector& q_diag) {
  Vector mean = multiply(phi, fs.mean);
  const Vector gu = multiply(gamma, u);
  for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += gu[i];

  Matrix t = multiply(phi, fs.cov);
  Matrix cov = multiply_nt(t, phi);
  for (std::size_t i = 0; i < q_diag.size(); ++i) cov(i, i) += q_diag[i];
  symmetrize(cov);

  for (double v : mean)
    if (!std::isfinite(v)) throw std::runtime_error("predict: non-finite mean");
  if (!cov.all_finite()) throw std::runtime_error("predict: non-finite covariance");

  fs.mean = std::move(mean);
  fs.cov = std::move(cov);
}

void update(FilterState& fs, const Vector& z, const Matrix& cobs, const Vector& r_diag) {
  const std::size_t n = cobs.rows();
  if (z.size() != n || r_diag.size() != n)
    throw std::invalid_argument("update: measurement dimension mismatch");

  // S = R + C Sigma C^T, K = Sigma C^T S^{-1}.
  const Matrix pct = multiply_nt(fs.cov, cobs);  // N x n
  Matrix s = multiply(cobs, pct);
  for (std::size_t i = 0; i < n; ++i) s(i, i) += r_diag[i];
  symmetrize(s);

  Matrix kt;  // n x N, K^T = S^{-1} (Sigma C^T)^T
  try {
    kt = Cholesky(s).solve(pct.transposed());
  } catch (const std::runtime_error&) {
    throw std::runtime_error("update: innovation matrix is singular");
  }

  Vector resid = multiply(cobs, fs.mean);
  for (std::size_t i = 0; i < n; ++i) resid[i] = z[i] - resid[i];
  // mean += K * resid
  for (std::size_t i = 0; i < n; ++i)
    kernels::active().axpy(fs.mean.size(), resid[i], kt.row(i), fs.mean.data());

  // cov -= K S K^T = (K S) K^T; K = kt^T.
  const Matrix k = kt.transposed();
  const Matrix ks = multiply(k, s);
  Matrix ksk = multiply_nt(ks, k);
  fs.cov -= ksk;
  symmetrize(fs.cov);

  if (!fs.cov.all_finite())
    throw std::runtime_error("update: non-finite covariance");
}

FilterState initial_state(const building::BuildingModel& model,
                          const StateLayout& layout, const FilterOptions& opt) {
  FilterState fs;
  fs.mean.assign(layout.size(), 0.0);
  fs.cov = Matrix(layout.size(), layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto& sid = layout.describe(i);
    const bool load = layout.is_load_state(i);
    fs.mean[i] = load ? 0.0 : model.zones[sid.zone].setpoint;
    fs.cov(i, i) = load ? opt.init_load_var : opt.init_temp_var;
  }
  return fs;
}

FilterRun run_filter(const building::BuildingModel& model,
                     const std::vector<inputs::WeatherRecord>& weather,
                     const inputs::HvacSeries& hvac,
                     const std::vector<Vector>& measurements,
                     const NoiseSpec& noise, const FilterOptions& opt) {
  if (weather.size() != hvac.timestamps.size() ||
      weather.size() != measurements.size())
    throw std::runtime_error("run_filter: series lengths differ");

  const StateLayout layout(model);
  const statespace::InputLayout il = statespace::build_input_layout(model);
  const Matrix cobs = assemble_observation(model, layout);

  const double record_dt = weather.size() > 1
      ? static_cast<double>(weather[1].t.epoch_s - weather[0].t.epoch_s)
      : 3600.0;
  const int substeps = std::max(1, static_cast<int>(std::lround(record_dt / opt.dt)));
  statespace::DynamicsCache cache(model, record_dt / substeps);

  NoiseSpec ns = noise;
  if (ns.process.empty())
    ns = default_noise(layout, noise.measurement, opt.load_process_var);

  FilterState fs = initial_state(model, layout, opt);
  FilterRun out;
  for (std::size_t r = 0; r < weather.size(); ++r) {
    const Vector u = inputs::assemble_input(model, il, weather[r], hvac.timestamps[r],
                                            hvac.records[r],
                                            inputs::solar_gains(model, il, weather[r]));
    const statespace::Discretized& d = cache.get(hvac.records[r]);
    for (int s = 0; s < substeps; ++s) predict(fs, d.phi, d.gamma, u, ns.process);
    update(fs, measurements[r], cobs, ns.measurement);
    fs.t = weather[r].t.epoch_s;

    out.timestamps.push_back(weather[r].t);
    out.means.push_back(fs.mean);
    Vector var(layout.size());
    for (std::size_t i = 0; i < layout.size(); ++i) var[i] = fs.cov(i, i);
    out.variances.push_back(std::move(var));
    if (opt.store_covariance) out.covariances.push_back(fs.cov);
  }
  return out;
}

}  // namespace bem::filtering
