#include <immintrin.h>

#include <cmath>

#include "wcq/kernels.hpp"

namespace wcq::kernels {

namespace {

void axpy_avx2(double* row, const double* pivot, double c, std::size_t n) {
  const __m256d vp = _mm256_set1_pd(kPrime);
  const __m256d vinv = _mm256_set1_pd(1.0 / kPrime);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d x = _mm256_sub_pd(_mm256_loadu_pd(row + j), _mm256_mul_pd(vc, _mm256_loadu_pd(pivot + j)));
    __m256d q = _mm256_floor_pd(_mm256_mul_pd(x, vinv));
    __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(q, vp));
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), vp));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, vp, _CMP_GE_OQ), vp));
    _mm256_storeu_pd(row + j, r);
  }
  for (; j < n; ++j) {
    double x = row[j] - c * pivot[j];
    double q = std::floor(x * (1.0 / kPrime));
    double r = x - q * kPrime;
    if (r < 0) r += kPrime;
    if (r >= kPrime) r -= kPrime;
    row[j] = r;
  }
}

}  // namespace

const ModKernel* avx2_kernel_impl() {
  static const ModKernel k{"avx2", &axpy_avx2};
  return &k;
}

}  // namespace wcq::kernels
