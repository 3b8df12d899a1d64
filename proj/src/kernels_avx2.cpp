// kernels_avx2.cpp
// AVX2 kernel variants. Compiled with -mavx2 for this translation unit only;
// callers reach these through the dispatch table after a CPUID check.
//
// The dot reduction extracts the 4 vector lanes and sums them in the same
// ((l0+l1)+(l2+l3)) order as the scalar reference, and multiplies/adds are
// kept separate (no FMA), so the two variants agree bit for bit.
#include "pdi/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

namespace pdi::kernels::detail {

bool avx2_available() { return __builtin_cpu_supports("avx2") != 0; }

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vx, vy));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3]));
  for (; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) {
    y[i] += a * x[i];
  }
}

void scale_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) {
    x[i] *= a;
  }
}

} // namespace pdi::kernels::detail

#endif // __x86_64__
