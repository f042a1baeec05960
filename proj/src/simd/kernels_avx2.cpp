#include <immintrin.h>

#include <cmath>

#include "jetgeo/simd/kernels.hpp"

namespace jetgeo::simd {

namespace {

void horner_batch_avx2(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = nc; j-- > 0;) acc = _mm256_fmadd_pd(acc, xv, _mm256_set1_pd(c[j]));
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = nc; j-- > 0;) acc = std::fma(acc, x[i], c[j]);
    out[i] = acc;
  }
}

double ratio_sum_avx2(const double* w, const double* num, const double* a, const double* b, std::size_t n) {
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sqrt_pd(_mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    const __m256d t = _mm256_div_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(num + i)), d);
    s = _mm256_add_pd(s, t);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, s);
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) acc += w[i] * num[i] / std::sqrt(a[i] * b[i]);
  return acc;
}

}  // namespace

const Kernels& avx2_kernels_impl() {
  static const Kernels k{"avx2", horner_batch_avx2, ratio_sum_avx2};
  return k;
}

}  // namespace jetgeo::simd
