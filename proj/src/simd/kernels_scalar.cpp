#include <cmath>

#include "jetgeo/simd/kernels.hpp"

namespace jetgeo::simd {

namespace {

void horner_batch_scalar(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = nc; j-- > 0;) acc = acc * x[i] + c[j];
    out[i] = acc;
  }
}

double ratio_sum_scalar(const double* w, const double* num, const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * num[i] / std::sqrt(a[i] * b[i]);
  return s;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar", horner_batch_scalar, ratio_sum_scalar};
  return k;
}

}  // namespace jetgeo::simd
