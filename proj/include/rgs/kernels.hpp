#pragma once

#include <cstddef>

namespace rgs::kernels {

// Point sets are stored structure-of-arrays: coordinate k of point g is
// soa[k * stride + g]. All variants accumulate over k in the same order, so
// results are bit-identical across variants.
struct KernelTable {
  const char* name;

  // out[g] = sum_k |soa[k][g] - q[k]|
  void (*l1_distances)(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                       const double* q, double* out);

  // out[h] = sum_k soa[k][h] * q[k]
  void (*plane_values)(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                       const double* q, double* out);

  // min_g values[g] + |g - q|_1
  double (*envelope_upper)(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                           const double* values, const double* q);

  // max_g values[g] - |g - q|_1
  double (*envelope_lower)(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                           const double* values, const double* q);
};

const KernelTable& scalar();
// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2();

// Selected once: AVX2 when available unless RGS_KERNELS=scalar.
const KernelTable& active();

// Convenience wrapper: min_h plane value, index of the first minimizer in *arg.
double plane_min(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                 const double* q, std::size_t* arg);

}  // namespace rgs::kernels
