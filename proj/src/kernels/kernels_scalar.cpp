#include <cmath>

#include "rgs/kernels.hpp"

namespace rgs::kernels {
namespace {

void l1_distances(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                  const double* q, double* out) {
  for (std::size_t g = 0; g < count; ++g) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += std::fabs(soa[k * stride + g] - q[k]);
    out[g] = s;
  }
}

void plane_values(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                  const double* q, double* out) {
  for (std::size_t h = 0; h < count; ++h) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += soa[k * stride + h] * q[k];
    out[h] = s;
  }
}

double envelope_upper(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                      const double* values, const double* q) {
  double best = INFINITY;
  for (std::size_t g = 0; g < count; ++g) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += std::fabs(soa[k * stride + g] - q[k]);
    const double t = values[g] + s;
    if (t < best) best = t;
  }
  return best;
}

double envelope_lower(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                      const double* values, const double* q) {
  double best = -INFINITY;
  for (std::size_t g = 0; g < count; ++g) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += std::fabs(soa[k * stride + g] - q[k]);
    const double t = values[g] - s;
    if (t > best) best = t;
  }
  return best;
}

const KernelTable kScalar{"scalar", &l1_distances, &plane_values, &envelope_upper, &envelope_lower};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace rgs::kernels
