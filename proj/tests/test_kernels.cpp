#include "doctest.h"

#include <cmath>

#include "bem/linalg/kernels.hpp"
#include "bem/linalg/matrix.hpp"
#include "support.hpp"

using namespace bem;
using test_support::naive_multiply;
using test_support::random_matrix;

namespace {

// FMA contraction makes SIMD results differ from the scalar reference at the
// last few ulps; compare with a relative tolerance.
void check_close(const Matrix& a, const Matrix& b, double tol) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double scale = std::max({1.0, std::abs(a(i, j)), std::abs(b(i, j))});
      CHECK(std::abs(a(i, j) - b(i, j)) <= tol * scale);
    }
}

}  // namespace

TEST_CASE("scalar and dispatched kernels agree on random shapes") {
  io::Rng rng(11);
  const auto& k = kernels::active();
  INFO("active kernel set: ", k.name);
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng.next_u64() % 33;
    const std::size_t n = 1 + rng.next_u64() % 33;
    const std::size_t p = 1 + rng.next_u64() % 33;
    Matrix a = random_matrix(m, p, rng), b = random_matrix(p, n, rng);
    Matrix bt = b.transposed();

    Matrix c_ref(m, n), c_act(m, n);
    kernels::scalar::gemm_nn(m, n, p, a.data(), p, b.data(), n, c_ref.data(), n);
    k.gemm_nn(m, n, p, a.data(), p, b.data(), n, c_act.data(), n);
    check_close(c_ref, c_act, 1e-13);

    Matrix d_ref(m, n), d_act(m, n);
    kernels::scalar::gemm_nt(m, n, p, a.data(), p, bt.data(), p, d_ref.data(), n);
    k.gemm_nt(m, n, p, a.data(), p, bt.data(), p, d_act.data(), n);
    check_close(d_ref, d_act, 1e-13);
    check_close(c_ref, d_ref, 1e-13);  // A*B == A*(B^T)^T

    Vector x(p), y_ref(m, 0.0), y_act(m, 0.0);
    for (auto& v : x) v = 2.0 * rng.uniform() - 1.0;
    kernels::scalar::gemv(m, p, a.data(), p, x.data(), y_ref.data());
    k.gemv(m, p, a.data(), p, x.data(), y_act.data());
    for (std::size_t i = 0; i < m; ++i)
      CHECK(std::abs(y_ref[i] - y_act[i]) <= 1e-13 * std::max(1.0, std::abs(y_ref[i])));

    const double dot_ref = kernels::scalar::dot(p, x.data(), x.data());
    CHECK(std::abs(k.dot(p, x.data(), x.data()) - dot_ref) <= 1e-13 * std::max(1.0, dot_ref));

    Vector ax_ref = x, ax_act = x;
    kernels::scalar::axpy(p, 0.37, x.data(), ax_ref.data());
    k.axpy(p, 0.37, x.data(), ax_act.data());
    for (std::size_t i = 0; i < p; ++i)
      CHECK(ax_ref[i] == doctest::Approx(ax_act[i]).epsilon(1e-13));
  }
}

TEST_CASE("multiply matches a naive triple loop") {
  io::Rng rng(7);
  Matrix a = random_matrix(17, 23, rng), b = random_matrix(23, 9, rng);
  check_close(multiply(a, b), naive_multiply(a, b), 1e-12);
  check_close(multiply_nt(a, b.transposed()), naive_multiply(a, b), 1e-12);
}

TEST_CASE("Cholesky solves SPD systems") {
  io::Rng rng(3);
  Matrix g = random_matrix(12, 12, rng);
  Matrix a = multiply_nt(g, g);  // G G^T, SPD with probability 1
  for (std::size_t i = 0; i < 12; ++i) a(i, i) += 0.5;
  Vector b(12);
  for (auto& v : b) v = rng.uniform();
  Vector x = Cholesky(a).solve(b);
  Vector r = multiply(a, x);
  for (std::size_t i = 0; i < 12; ++i) CHECK(r[i] == doctest::Approx(b[i]).epsilon(1e-10));

  Matrix not_pd(2, 2, {1.0, 2.0, 2.0, 1.0});
  CHECK_THROWS_AS(Cholesky{not_pd}, std::runtime_error);
}

TEST_CASE("lu_solve handles general systems and flags singularity") {
  Matrix a(3, 3, {0.0, 2.0, 1.0, 1.0, -1.0, 0.0, 3.0, 0.0, 2.0});
  Vector x = lu_solve(a, {5.0, -1.0, 8.0});
  Vector r = multiply(a, x);
  CHECK(r[0] == doctest::Approx(5.0));
  CHECK(r[1] == doctest::Approx(-1.0));
  CHECK(r[2] == doctest::Approx(8.0));

  Matrix sing(2, 2, {1.0, 2.0, 2.0, 4.0});
  CHECK_THROWS_AS(lu_solve(sing, {1.0, 1.0}), std::runtime_error);
}

TEST_CASE("expm: analytic cases") {
  Matrix h1(1, 1, {-1.0});
  h1 *= 0.5;  // H*dt with dt = 0.5
  CHECK(expm(h1)(0, 0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

  Matrix z(4, 4);
  Matrix ez = expm(z);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(ez(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  Matrix d(2, 2, {-2.0, 0.0, 0.0, 3.0});
  Matrix ed = expm(d);
  CHECK(ed(0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(ed(1, 1) == doctest::Approx(std::exp(3.0)).epsilon(1e-12));
  CHECK(ed(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("expm satisfies the semigroup property on random stable matrices") {
  io::Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix h = test_support::random_stable(8, rng);
    Matrix full = expm(h);
    Matrix half = h;
    half *= 0.5;
    Matrix eh = expm(half);
    check_close(multiply(eh, eh), full, 1e-10);
  }
}
