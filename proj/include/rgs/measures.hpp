#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rgs/types.hpp"
#include "rgs/zerosum.hpp"

namespace rgs {

struct Atom {
  Belief point;
  double weight = 0.0;
};

// Finitely supported probability on the simplex. Atoms closer than 1e-12 in l1
// are merged; atoms are kept in lexicographic order.
class BeliefMeasure {
 public:
  BeliefMeasure() = default;
  explicit BeliefMeasure(std::vector<Atom> atoms);

  static BeliefMeasure dirac(Belief p);
  // sum_s w_s u_s; weights must be a probability vector.
  static BeliefMeasure mixture(const std::vector<std::pair<double, BeliefMeasure>>& parts);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  std::size_t dim() const { return atoms_.empty() ? 0 : atoms_.front().point.size(); }
  bool empty() const { return atoms_.empty(); }

  // sum_p u(p) f(p)
  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.weight * f(a.point);
    return s;
  }

 private:
  std::vector<Atom> atoms_;
};

// Joint law over K x D stored row-major (k, d).
BeliefMeasure disintegrate(const std::vector<double>& joint, std::size_t states, std::size_t signals);

Belief barycenter(const BeliefMeasure& u);

struct WassersteinResult {
  double value = 0.0;
  Matrix plan;  // supp(u) x supp(v)
};

WassersteinResult wasserstein(const BeliefMeasure& u, const BeliefMeasure& v);

// Feasible case: coupling x(p,q) over supp(u) x supp(v) with row sums u(p),
// column sums v(q) and sum_q x(p,q) q = u(p) p.
// Infeasible case: separator f(x) = min_s planes[s] . x (concave, piecewise
// linear) with u(f) < v(f).
struct ChoquetCertificate {
  bool feasible = false;
  Matrix coupling;
  std::vector<std::vector<double>> planes;
  double u_value = 0.0;
  double v_value = 0.0;

  double separator(const Belief& x) const;
};

struct ChoquetResult {
  bool dominates = false;
  ChoquetCertificate certificate;
};

// u sweeps v (u is better than v for the informed player).
ChoquetResult choquet_dominates(const BeliefMeasure& u, const BeliefMeasure& v);

struct SplitComponent {
  double lambda = 0.0;
  Belief point;
};

StackedMixed splitting_action(const Belief& p, const std::vector<SplitComponent>& components,
                              const std::vector<StackedMixed>& actions);

struct AtomSplit {
  Belief atom;
  double weight = 0.0;
  std::vector<SplitComponent> parts;  // barycenter of parts = atom
};

// Throws PreconditionError when u does not dominate v.
std::vector<AtomSplit> split_decomposition(const BeliefMeasure& u, const BeliefMeasure& v);


}  // namespace rgs
