#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rgs/types.hpp"

namespace rgs {

// Points of the simplex with coordinates in (1/N) Z, in lexicographic order of
// their integer compositions. Neighbouring points are 2/N apart in l1.
class SimplexLattice {
 public:
  SimplexLattice(std::size_t dim, std::size_t resolution);

  // Resolution N with l1 spacing 2/N <= delta.
  static std::size_t resolution_for(double delta);

  std::size_t dim() const { return dim_; }
  std::size_t resolution() const { return n_; }
  std::size_t size() const { return count_; }
  double spacing() const { return dim_ == 1 ? 0.0 : 2.0 / static_cast<double>(n_); }

  Belief point(std::size_t g) const;
  const std::vector<int>& composition(std::size_t g) const { return comps_[g]; }
  // Structure-of-arrays coordinates for the kernels: soa()[k * size() + g].
  const std::vector<double>& soa() const { return soa_; }

  std::size_t index_of(const std::vector<int>& comp) const;
  // Largest-remainder rounding of N p.
  std::size_t nearest(const Belief& p) const;

 private:
  std::size_t dim_, n_, count_ = 0;
  std::vector<std::vector<int>> comps_;
  std::vector<double> soa_;
  std::map<std::vector<int>, std::size_t> index_;
};

}  // namespace rgs
