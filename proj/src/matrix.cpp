#include "bem/linalg/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "bem/linalg/kernels.hpp"

namespace bem {

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix +=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix -=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  Matrix c(a.rows(), b.cols());
  kernels::active().gemm_nn(a.rows(), b.cols(), a.cols(), a.data(), a.cols(),
                            b.data(), b.cols(), c.data(), c.cols());
  return c;
}

Matrix multiply_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("multiply_nt: shape mismatch");
  Matrix c(a.rows(), b.rows());
  kernels::active().gemm_nt(a.rows(), b.rows(), a.cols(), a.data(), a.cols(),
                            b.data(), b.cols(), c.data(), c.cols());
  return c;
}

Vector multiply(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("multiply: vector size mismatch");
  Vector y(a.rows(), 0.0);
  kernels::active().gemv(a.rows(), a.cols(), a.data(), a.cols(), x.data(), y.data());
  return y;
}

void symmetrize(Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetrize: not square");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
}

Cholesky::Cholesky(const Matrix& a) : l_(a.rows(), a.cols()) {
  if (a.rows() != a.cols()) throw std::invalid_argument("Cholesky: not square");
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j) - kernels::active().dot(j, l_.row(j), l_.row(j));
    if (!(d > 0.0)) throw std::runtime_error("Cholesky: matrix not positive definite");
    const double ljj = std::sqrt(d);
    l_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      const double s = a(i, j) - kernels::active().dot(j, l_.row(i), l_.row(j));
      l_(i, j) = s / ljj;
    }
  }
}

Vector Cholesky::solve(const Vector& b) const {
  const std::size_t n = l_.rows();
  if (b.size() != n) throw std::invalid_argument("Cholesky::solve: size mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = (b[i] - kernels::active().dot(i, l_.row(i), y.data())) / l_(i, i);
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= l_(j, ii) * x[j];
    x[ii] = s / l_(ii, ii);
  }
  return x;
}

Matrix Cholesky::solve(const Matrix& b) const {
  Matrix x(b.rows(), b.cols());
  Vector col(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    Vector xc = solve(col);
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = xc[i];
  }
  return x;
}

bool is_psd_within(const Matrix& a, double shift) {
  Matrix s = a;
  const double bump = shift + 1e-14 * (1.0 + a.max_abs());
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) += bump;
  try {
    Cholesky chol(s);
    (void)chol;
    return true;
  } catch (const std::runtime_error&) {
    return false;
  }
}

Vector lu_solve(Matrix a, Vector b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw std::invalid_argument("lu_solve: shape mismatch");
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

namespace {

// Pade [7/7] coefficients; valid for ||A||_1 <= 0.95 after scaling.
constexpr double kPade7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                             25200.0,    1512.0,    56.0,      1.0};
constexpr double kTheta7 = 0.95;

Matrix lu_solve_matrix(Matrix a, Matrix b) {
  Matrix x(b.rows(), b.cols());
  Vector col(b.rows());
  const std::size_t n = b.rows();
  // One factorization would do; RHS counts here are small so per-column
  // solves keep the code short.
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    Vector xc = lu_solve(a, col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = xc[i];
  }
  return x;
}

}  // namespace

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: not square");
  if (!a.all_finite()) throw std::runtime_error("expm: non-finite input");
  const std::size_t n = a.rows();

  int squarings = 0;
  const double norm = a.one_norm();
  if (norm > kTheta7) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta7)));
  }
  Matrix as = a;
  if (squarings > 0) as *= std::ldexp(1.0, -squarings);

  // U = A * (c1 I + c3 A^2 + c5 A^4 + c7 A^6), V = c0 I + c2 A^2 + ...
  const Matrix a2 = multiply(as, as);
  const Matrix a4 = multiply(a2, a2);
  const Matrix a6 = multiply(a4, a2);

  Matrix u_in(n, n), v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    u_in(i, i) = kPade7[1];
    v(i, i) = kPade7[0];
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    u_in.data()[i] += kPade7[3] * a2.data()[i] + kPade7[5] * a4.data()[i] +
                      kPade7[7] * a6.data()[i];
    v.data()[i] += kPade7[2] * a2.data()[i] + kPade7[4] * a4.data()[i] +
                   kPade7[6] * a6.data()[i];
  }
  const Matrix u = multiply(as, u_in);

  Matrix num = v, den = v;
  num += u;
  den -= u;
  Matrix r = lu_solve_matrix(std::move(den), std::move(num));

  for (int s = 0; s < squarings; ++s) r = multiply(r, r);
  if (!r.all_finite()) throw std::runtime_error("expm: non-finite result");
  return r;
}

}  // namespace bem
