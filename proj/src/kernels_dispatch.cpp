#include "bem/linalg/kernels.hpp"

#include <cstdlib>

namespace bem::kernels {

namespace {

constexpr Dispatch kScalar{scalar::axpy, scalar::dot, scalar::gemm_nn,
                           scalar::gemm_nt, scalar::gemv, "scalar"};

#if defined(BEM_HAVE_AVX2_KERNELS)
constexpr Dispatch kAvx2{avx2::axpy, avx2::dot, avx2::gemm_nn, avx2::gemm_nt,
                         avx2::gemv, "avx2"};
#endif

Dispatch select() {
  const char* force = std::getenv("BEM_FORCE_SCALAR");
  if (force && force[0] == '1') return kScalar;
#if defined(BEM_HAVE_AVX2_KERNELS)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return kAvx2;
#endif
  return kScalar;
}

}  // namespace

const Dispatch& active() {
  static const Dispatch d = select();
  return d;
}

}  // namespace bem::kernels
