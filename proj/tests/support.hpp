#pragma once
// Shared test helpers: independent reference implementations used as oracles
// against the library paths, plus small generators.

#include <cmath>
#include <cstdint>
#include <vector>

#include "bem/io/rng.hpp"
#include "bem/linalg/matrix.hpp"

namespace test_support {

// Plain triple-loop product, independent of the kernel layer.
inline bem::Matrix naive_multiply(const bem::Matrix& a, const bem::Matrix& b) {
  bem::Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline bem::Matrix random_matrix(std::size_t r, std::size_t c, bem::io::Rng& rng,
                                 double scale = 1.0) {
  bem::Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = scale * (2.0 * rng.uniform() - 1.0);
  return m;
}

// Diagonally dominant with negative diagonal: Hurwitz by Gershgorin.
inline bem::Matrix random_stable(std::size_t n, bem::io::Rng& rng) {
  bem::Matrix h = random_matrix(n, n, rng, 0.5);
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) off += std::abs(h(i, j));
    h(i, i) = -(off + 0.1 + rng.uniform());
  }
  return h;
}

// All set partitions of {0..n-1} as assignment vectors (restricted growth
// strings). Bell(8) = 4140, fine for exhaustive modularity checks.
inline std::vector<std::vector<std::size_t>> all_partitions(std::size_t n) {
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t next_free) -> void {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (std::size_t v = 0; v <= next_free; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(next_free, v + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Smallest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
inline double min_eigenvalue(bem::Matrix a) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-28 * (1.0 + a.max_abs() * a.max_abs())) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  double mn = a(0, 0);
  for (std::size_t i = 1; i < n; ++i) mn = std::min(mn, a(i, i));
  return mn;
}

}  // namespace test_support
