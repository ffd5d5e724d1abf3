#include "bem/linalg/kernels.hpp"

#if defined(BEM_HAVE_AVX2_KERNELS)

#include <immintrin.h>

namespace bem::kernels::avx2 {

void axpy(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

static inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

// Rank-1 style update: C rows accumulate broadcast(A[i,p]) * B[p,:].
// Two rows of A are processed together to reuse the streamed B row.
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             std::size_t lda, const double* b, std::size_t ldb, double* c,
             std::size_t ldc) {
  std::size_t i = 0;
  for (; i + 2 <= m; i += 2) {
    const double* a0 = a + i * lda;
    const double* a1 = a0 + lda;
    double* c0 = c + i * ldc;
    double* c1 = c0 + ldc;
    for (std::size_t p = 0; p < k; ++p) {
      const double s0 = a0[p];
      const double s1 = a1[p];
      if (s0 == 0.0 && s1 == 0.0) continue;
      const __m256d v0 = _mm256_set1_pd(s0);
      const __m256d v1 = _mm256_set1_pd(s1);
      const double* bp = b + p * ldb;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        const __m256d vb = _mm256_loadu_pd(bp + j);
        _mm256_storeu_pd(c0 + j, _mm256_fmadd_pd(v0, vb, _mm256_loadu_pd(c0 + j)));
        _mm256_storeu_pd(c1 + j, _mm256_fmadd_pd(v1, vb, _mm256_loadu_pd(c1 + j)));
      }
      for (; j < n; ++j) {
        c0[j] += s0 * bp[j];
        c1[j] += s1 * bp[j];
      }
    }
  }
  for (; i < m; ++i) {
    const double* ai = a + i * lda;
    double* ci = c + i * ldc;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = ai[p];
      if (s == 0.0) continue;
      const __m256d v = _mm256_set1_pd(s);
      const double* bp = b + p * ldb;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4)
        _mm256_storeu_pd(ci + j, _mm256_fmadd_pd(v, _mm256_loadu_pd(bp + j),
                                                 _mm256_loadu_pd(ci + j)));
      for (; j < n; ++j) ci[j] += s * bp[j];
    }
  }
}

void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a,
             std::size_t lda, const double* b, std::size_t ldb, double* c,
             std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a + i * lda;
    double* ci = c + i * ldc;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      const double* b0 = b + j * ldb;
      const double* b1 = b0 + ldb;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      std::size_t p = 0;
      for (; p + 4 <= k; p += 4) {
        const __m256d va = _mm256_loadu_pd(ai + p);
        acc0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(b0 + p), acc0);
        acc1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(b1 + p), acc1);
      }
      double s0 = hsum(acc0);
      double s1 = hsum(acc1);
      for (; p < k; ++p) {
        s0 += ai[p] * b0[p];
        s1 += ai[p] * b1[p];
      }
      ci[j] += s0;
      ci[j + 1] += s1;
    }
    for (; j < n; ++j) {
      const double* bj = b + j * ldb;
      ci[j] += dot(k, ai, bj);
    }
  }
}

void gemv(std::size_t m, std::size_t n, const double* a, std::size_t lda,
          const double* x, double* y) {
  for (std::size_t i = 0; i < m; ++i) y[i] += dot(n, a + i * lda, x);
}

}  // namespace bem::kernels::avx2

#endif  // BEM_HAVE_AVX2_KERNELS
