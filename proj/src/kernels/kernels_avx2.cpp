#include <immintrin.h>

#include <cmath>

#include "rgs/kernels.hpp"

namespace rgs::kernels {
namespace {

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline __m256d l1_block(const double* soa, std::size_t stride, std::size_t g, std::size_t dim,
                        const double* q) {
  __m256d s = _mm256_setzero_pd();
  for (std::size_t k = 0; k < dim; ++k) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(soa + k * stride + g), _mm256_set1_pd(q[k]));
    s = _mm256_add_pd(s, vabs(d));
  }
  return s;
}

inline double l1_one(const double* soa, std::size_t stride, std::size_t g, std::size_t dim,
                     const double* q) {
  double s = 0.0;
  for (std::size_t k = 0; k < dim; ++k) s += std::fabs(soa[k * stride + g] - q[k]);
  return s;
}

void l1_distances(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                  const double* q, double* out) {
  std::size_t g = 0;
  for (; g + 4 <= count; g += 4) _mm256_storeu_pd(out + g, l1_block(soa, stride, g, dim, q));
  for (; g < count; ++g) out[g] = l1_one(soa, stride, g, dim, q);
}

void plane_values(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                  const double* q, double* out) {
  std::size_t h = 0;
  for (; h + 4 <= count; h += 4) {
    __m256d s = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k)
      s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_loadu_pd(soa + k * stride + h), _mm256_set1_pd(q[k])));
    _mm256_storeu_pd(out + h, s);
  }
  for (; h < count; ++h) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += soa[k * stride + h] * q[k];
    out[h] = s;
  }
}

double hmin(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return std::fmin(std::fmin(t[0], t[1]), std::fmin(t[2], t[3]));
}

double hmax(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return std::fmax(std::fmax(t[0], t[1]), std::fmax(t[2], t[3]));
}

double envelope_upper(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                      const double* values, const double* q) {
  __m256d best = _mm256_set1_pd(INFINITY);
  std::size_t g = 0;
  for (; g + 4 <= count; g += 4) {
    const __m256d t = _mm256_add_pd(_mm256_loadu_pd(values + g), l1_block(soa, stride, g, dim, q));
    best = _mm256_min_pd(best, t);
  }
  double b = hmin(best);
  for (; g < count; ++g) b = std::fmin(b, values[g] + l1_one(soa, stride, g, dim, q));
  return b;
}

double envelope_lower(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                      const double* values, const double* q) {
  __m256d best = _mm256_set1_pd(-INFINITY);
  std::size_t g = 0;
  for (; g + 4 <= count; g += 4) {
    const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(values + g), l1_block(soa, stride, g, dim, q));
    best = _mm256_max_pd(best, t);
  }
  double b = hmax(best);
  for (; g < count; ++g) b = std::fmax(b, values[g] - l1_one(soa, stride, g, dim, q));
  return b;
}

const KernelTable kAvx2{"avx2", &l1_distances, &plane_values, &envelope_upper, &envelope_lower};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace rgs::kernels
