#include <algorithm>
#include <cmath>

#include "rgs/error.hpp"
#include "rgs/strategies.hpp"

namespace rgs {

namespace {

double nonrevealing_value(const std::vector<Matrix>& g, const Belief& p) {
  Matrix avg(g[0].rows, g[0].cols);
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t e = 0; e < avg.data.size(); ++e) avg.data[e] += p[k] * g[k].data[e];
  return matrix_game_value(avg).value;
}

}  // namespace

CavuOracle::CavuOracle(std::vector<Matrix> matrices, std::size_t resolution)
    : matrices_(std::move(matrices)), lattice_(matrices_.size(), matrices_.size() == 1 ? 1 : resolution) {
  const std::size_t K = matrices_.size(), G = lattice_.size();
  u_.resize(G);
  std::vector<double> pts(G * K);
  for (std::size_t g = 0; g < G; ++g) {
    const Belief p = lattice_.point(g);
    u_[g] = nonrevealing_value(matrices_, p);
    std::copy(p.begin(), p.end(), pts.begin() + static_cast<std::ptrdiff_t>(g * K));
  }
  hull_ = std::make_shared<PointHull>(K, std::move(pts), u_);
  double lip = 0.0;
  for (const Matrix& m : matrices_)
    for (double x : m.data) lip = std::max(lip, std::fabs(x));
  // rounding each splitting point to the lattice, then moving back to p
  error_bound_ = 2.0 * lip * lattice_.spacing();
}

double CavuOracle::u(const Belief& p) const { return nonrevealing_value(matrices_, p); }

double CavuOracle::value(const Belief& p) const {
  if (p.size() != dim()) fail_precondition("cavu: belief dimension mismatch");
  return hull_->value(p.data());
}

CavuOracle cavu_oracle(const std::vector<Matrix>& matrices, std::size_t resolution) {
  if (matrices.empty()) fail_precondition("cavu: no matrices");
  if (matrices.size() > 3) throw UsageError("cavu oracle supports at most 3 states, got " + std::to_string(matrices.size()));
  if (resolution == 0) fail_precondition("cavu: resolution must be positive");
  for (const Matrix& m : matrices)
    if (m.rows != matrices[0].rows || m.cols != matrices[0].cols || m.data.empty())
      fail_precondition("cavu: matrices must share a nonempty shape");
  return CavuOracle(matrices, resolution);
}

}  // namespace rgs
