#pragma once
// Row-major dense matrix of doubles plus the handful of operations the
// filtering pipeline needs. All heavy products route through the dispatched
// kernels (see kernels.hpp).

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace bem {

using Vector = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> v)
      : rows_(rows), cols_(cols), data_(v) {
    if (data_.size() != rows * cols)
      throw std::invalid_argument("Matrix: initializer size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  Matrix transposed() const;
  void set_zero() { data_.assign(data_.size(), 0.0); }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  bool all_finite() const;
  double max_abs() const;
  // Maximum absolute column sum.
  double one_norm() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// C = A * B
Matrix multiply(const Matrix& a, const Matrix& b);
// C = A * B^T
Matrix multiply_nt(const Matrix& a, const Matrix& b);
// y = A * x
Vector multiply(const Matrix& a, const Vector& x);

// A = (A + A^T) / 2, square A only.
void symmetrize(Matrix& a);

// Cholesky factorization of a symmetric positive-definite matrix.
// Throws std::runtime_error when the matrix is not PD.
class Cholesky {
 public:
  explicit Cholesky(const Matrix& a);
  // Solve A x = b for one right-hand side.
  Vector solve(const Vector& b) const;
  // Solve A X = B column-wise.
  Matrix solve(const Matrix& b) const;

 private:
  Matrix l_;  // lower triangle
};

// True when a + shift*I admits a Cholesky factorization, i.e. the symmetric
// matrix has min eigenvalue >= -shift up to roundoff.
bool is_psd_within(const Matrix& a, double shift);

// Solve A x = b with partial-pivot LU (general square A).
Vector lu_solve(Matrix a, Vector b);

// Matrix exponential exp(A) by scaling-and-squaring with a diagonal Pade
// approximant.
Matrix expm(const Matrix& a);

}  // namespace bem
