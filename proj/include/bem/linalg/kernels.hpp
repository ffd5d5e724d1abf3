#pragma once
// Dense double-precision kernels with runtime-dispatched SIMD variants.
//
// The scalar implementations are the reference; the AVX2 variants must agree
// with them up to FMA rounding (see tests/test_kernels.cpp). Dispatch is
// resolved once on first use. Set BEM_FORCE_SCALAR=1 in the environment to
// pin the scalar path.

#include <cstddef>

namespace bem::kernels {

// y[i] += a * x[i]
using axpy_fn = void (*)(std::size_t n, double a, const double* x, double* y);
// sum_i x[i] * y[i]
using dot_fn = double (*)(std::size_t n, const double* x, const double* y);
// C (m x n) += A (m x k) * B (k x n), all row-major, ld = row stride
using gemm_fn = void (*)(std::size_t m, std::size_t n, std::size_t k,
                         const double* a, std::size_t lda,
                         const double* b, std::size_t ldb,
                         double* c, std::size_t ldc);
// C (m x n) += A (m x k) * B^T, B is n x k row-major
using gemm_nt_fn = gemm_fn;
// y (m) += A (m x n) * x (n)
using gemv_fn = void (*)(std::size_t m, std::size_t n, const double* a,
                         std::size_t lda, const double* x, double* y);

namespace scalar {
void axpy(std::size_t n, double a, const double* x, double* y);
double dot(std::size_t n, const double* x, const double* y);
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             std::size_t lda, const double* b, std::size_t ldb, double* c,
             std::size_t ldc);
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a,
             std::size_t lda, const double* b, std::size_t ldb, double* c,
             std::size_t ldc);
void gemv(std::size_t m, std::size_t n, const double* a, std::size_t lda,
          const double* x, double* y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define BEM_HAVE_AVX2_KERNELS 1
namespace avx2 {
void axpy(std::size_t n, double a, const double* x, double* y);
double dot(std::size_t n, const double* x, const double* y);
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a,
             std::size_t lda, const double* b, std::size_t ldb, double* c,
             std::size_t ldc);
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const double* a,
             std::size_t lda, const double* b, std::size_t ldb, double* c,
             std::size_t ldc);
void gemv(std::size_t m, std::size_t n, const double* a, std::size_t lda,
          const double* x, double* y);
}  // namespace avx2
#endif

struct Dispatch {
  axpy_fn axpy;
  dot_fn dot;
  gemm_fn gemm_nn;
  gemm_nt_fn gemm_nt;
  gemv_fn gemv;
  const char* name;  // "scalar", "avx2"
};

// Active kernel set, selected once per process.
const Dispatch& active();

}  // namespace bem::kernels
