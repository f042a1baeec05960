#pragma once

// Batched kernels used by the quadrature inner loops. Each kernel has a scalar
// reference version; an AVX2/FMA version is used when the CPU supports it.

#include <cstddef>

namespace jetgeo::simd {

/// out[i] = sum_j c[j] * x[i]^j
using HornerBatchFn = void (*)(const double* c, std::size_t nc, const double* x, double* out, std::size_t n);

/// sum_i w[i] * num[i] / sqrt(a[i] * b[i])
using RatioSumFn = double (*)(const double* w, const double* num, const double* a, const double* b, std::size_t n);

struct Kernels {
  const char* name;
  HornerBatchFn horner_batch;
  RatioSumFn ratio_sum;
};

const Kernels& scalar_kernels();
/// nullptr when the AVX2 variant was not built or the CPU lacks avx2/fma.
const Kernels* avx2_kernels();

/// The variant in use. Picks AVX2 when available unless JETGEO_FORCE_SCALAR is
/// set in the environment or force_scalar(true) was called.
const Kernels& active();
void force_scalar(bool on);

}  // namespace jetgeo::simd
