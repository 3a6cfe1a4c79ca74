#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "rgs/kernels.hpp"

namespace rgs::kernels {

#if defined(RGS_HAVE_AVX2)
const KernelTable* avx2_table();
#endif

const KernelTable* avx2() {
#if defined(RGS_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("RGS_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return scalar();
    if (const KernelTable* t = avx2()) return *t;
    return scalar();
  }();
  return chosen;
}

double plane_min(const double* soa, std::size_t stride, std::size_t count, std::size_t dim,
                 const double* q, std::size_t* arg) {
  thread_local std::vector<double> buf;
  if (buf.size() < count) buf.resize(count);
  active().plane_values(soa, stride, count, dim, q, buf.data());
  double best = INFINITY;
  std::size_t at = 0;
  for (std::size_t h = 0; h < count; ++h) {
    if (buf[h] < best) {
      best = buf[h];
      at = h;
    }
  }
  if (arg) *arg = at;
  return best;
}

}  // namespace rgs::kernels
