#include "rgs/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rgs/error.hpp"

namespace rgs {

namespace {

void enumerate(std::size_t dim, int left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == dim) {
    cur.push_back(left);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int x = 0; x <= left; ++x) {
    cur.push_back(x);
    enumerate(dim, left - x, cur, out);
    cur.pop_back();
  }
}

}  // namespace

SimplexLattice::SimplexLattice(std::size_t dim, std::size_t resolution) : dim_(dim), n_(resolution) {
  if (dim == 0) fail_precondition("SimplexLattice: dimension 0");
  if (dim == 1) n_ = std::max<std::size_t>(n_, 1);
  if (n_ == 0) fail_precondition("SimplexLattice: resolution 0");
  std::vector<int> cur;
  enumerate(dim_, static_cast<int>(n_), cur, comps_);
  count_ = comps_.size();
  soa_.assign(dim_ * count_, 0.0);
  for (std::size_t g = 0; g < count_; ++g) {
    for (std::size_t k = 0; k < dim_; ++k)
      soa_[k * count_ + g] = static_cast<double>(comps_[g][k]) / static_cast<double>(n_);
    index_[comps_[g]] = g;
  }
}

std::size_t SimplexLattice::resolution_for(double delta) {
  if (!(delta > 0.0) || delta > 1.0) fail_precondition("grid spacing must lie in (0, 1]");
  return static_cast<std::size_t>(std::ceil(2.0 / delta - 1e-9));
}

Belief SimplexLattice::point(std::size_t g) const {
  Belief p(dim_);
  for (std::size_t k = 0; k < dim_; ++k) p[k] = soa_[k * count_ + g];
  return p;
}

std::size_t SimplexLattice::index_of(const std::vector<int>& comp) const {
  auto it = index_.find(comp);
  if (it == index_.end()) fail_precondition("SimplexLattice: not a lattice composition");
  return it->second;
}

std::size_t SimplexLattice::nearest(const Belief& p) const {
  const double N = static_cast<double>(n_);
  std::vector<int> c(dim_);
  std::vector<std::pair<double, std::size_t>> frac(dim_);
  int used = 0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double x = std::max(0.0, p[k]) * N;
    c[k] = static_cast<int>(std::floor(x));
    used += c[k];
    frac[k] = {x - c[k], k};
  }
  std::stable_sort(frac.begin(), frac.end(), [](auto a, auto b) { return a.first > b.first; });
  int left = static_cast<int>(n_) - used;
  for (std::size_t r = 0; left > 0; r = (r + 1) % dim_, --left) c[frac[r].second] += 1;
  while (left < 0) {  // only reachable with unnormalized input
    for (std::size_t k = 0; k < dim_ && left < 0; ++k)
      if (c[k] > 0) {
        --c[k];
        ++left;
      }
  }
  return index_of(c);
}

}  // namespace rgs
