#include "rgs/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rgs/error.hpp"
#include "rgs/tolerances.hpp"

namespace rgs {

BeliefMeasure::BeliefMeasure(std::vector<Atom> atoms) {
  if (atoms.empty()) fail_precondition("BeliefMeasure: no atoms");
  const std::size_t dim = atoms.front().point.size();
  double total = 0.0;
  for (Atom& a : atoms) {
    if (a.point.size() != dim) fail_precondition("BeliefMeasure: atoms of different dimension");
    if (!(a.weight >= 0.0)) fail_precondition("BeliefMeasure: negative weight");
    normalize_simplex(a.point, 1e-9, "BeliefMeasure atom");
    total += a.weight;
  }
  if (std::fabs(total - 1.0) > 1e-9) fail_precondition("BeliefMeasure: weights do not sum to one");

  for (Atom& a : atoms) {
    if (a.weight <= 0.0) continue;
    auto hit = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& b) {
      return l1_distance(a.point, b.point) <= kTol.structural;
    });
    if (hit != atoms_.end()) {
      hit->weight += a.weight;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
  for (Atom& a : atoms_) a.weight /= total;
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.point < y.point; });
}

BeliefMeasure BeliefMeasure::dirac(Belief p) { return BeliefMeasure({Atom{std::move(p), 1.0}}); }

BeliefMeasure BeliefMeasure::mixture(const std::vector<std::pair<double, BeliefMeasure>>& parts) {
  std::vector<Atom> atoms;
  for (const auto& [w, u] : parts) {
    if (w <= 0.0) continue;
    for (const Atom& a : u.atoms()) atoms.push_back({a.point, w * a.weight});
  }
  return BeliefMeasure(std::move(atoms));
}

BeliefMeasure disintegrate(const std::vector<double>& joint, std::size_t states, std::size_t signals) {
  if (joint.size() != states * signals) fail_precondition("disintegrate: table size mismatch");
  std::vector<Atom> atoms;
  for (std::size_t d = 0; d < signals; ++d) {
    double mass = 0.0;
    for (std::size_t k = 0; k < states; ++k) mass += joint[k * signals + d];
    if (mass <= 0.0) continue;
    Belief p(states);
    for (std::size_t k = 0; k < states; ++k) p[k] = joint[k * signals + d] / mass;
    atoms.push_back({std::move(p), mass});
  }
  return BeliefMeasure(std::move(atoms));
}

Belief barycenter(const BeliefMeasure& u) {
  Belief b(u.dim(), 0.0);
  for (const Atom& a : u.atoms())
    for (std::size_t k = 0; k < b.size(); ++k) b[k] += a.weight * a.point[k];
  return b;
}

WassersteinResult wasserstein(const BeliefMeasure& u, const BeliefMeasure& v) {
  if (u.dim() != v.dim()) fail_precondition("wasserstein: dimension mismatch");
  Matrix cost(u.size(), v.size());
  std::vector<double> su, sv;
  for (std::size_t a = 0; a < u.size(); ++a) {
    su.push_back(u.atoms()[a].weight);
    for (std::size_t b = 0; b < v.size(); ++b)
      cost(a, b) = l1_distance(u.atoms()[a].point, v.atoms()[b].point);
  }
  for (const Atom& b : v.atoms()) sv.push_back(b.weight);
  TransportSolution t = transport_lp(cost, su, sv);
  return {std::max(0.0, t.cost), std::move(t.plan)};
}

double ChoquetCertificate::separator(const Belief& x) const {
  double best = INFINITY;
  for (const auto& b : planes) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += b[k] * x[k];
    best = std::min(best, s);
  }
  return best;
}

ChoquetResult choquet_dominates(const BeliefMeasure& u, const BeliefMeasure& v) {
  if (u.dim() != v.dim()) fail_precondition("choquet_dominates: dimension mismatch");
  const std::size_t K = u.dim(), nu = u.size(), nv = v.size();
  lp::Problem prob(nu * nv, lp::Sense::Maximize);
  std::vector<lp::Entry> e;
  for (std::size_t a = 0; a < nu; ++a) {
    const Atom& pa = u.atoms()[a];
    for (std::size_t k = 0; k < K; ++k) {
      e.clear();
      for (std::size_t b = 0; b < nv; ++b) e.push_back({a * nv + b, v.atoms()[b].point[k]});
      prob.add_row(e, lp::RowType::Equal, pa.weight * pa.point[k]);
    }
  }
  for (std::size_t b = 0; b < nv; ++b) {
    e.clear();
    for (std::size_t a = 0; a < nu; ++a) e.push_back({a * nv + b, 1.0});
    prob.add_row(e, lp::RowType::Equal, v.atoms()[b].weight);
  }
  const FeasibilityResult f = feasibility(prob);
  ChoquetResult out;
  out.dominates = f.feasible;
  out.certificate.feasible = f.feasible;
  if (f.feasible) {
    out.certificate.coupling = Matrix(nu, nv);
    for (std::size_t i = 0; i < nu * nv; ++i) out.certificate.coupling.data[i] = std::max(0.0, f.point[i]);
    return out;
  }
  for (std::size_t a = 0; a < nu; ++a)
    out.certificate.planes.emplace_back(f.farkas.begin() + static_cast<long>(a * K),
                                        f.farkas.begin() + static_cast<long>((a + 1) * K));
  const ChoquetCertificate& c = out.certificate;
  out.certificate.u_value = u.integrate([&](const Belief& x) { return c.separator(x); });
  out.certificate.v_value = v.integrate([&](const Belief& x) { return c.separator(x); });
  return out;
}

StackedMixed splitting_action(const Belief& p, const std::vector<SplitComponent>& components,
                              const std::vector<StackedMixed>& actions) {
  if (components.empty() || components.size() != actions.size())
    fail_precondition("splitting_action: components and actions differ in number");
  const std::size_t K = p.size();
  const std::size_t I = actions.front().actions();
  Belief bary(K, 0.0);
  double lsum = 0.0;
  for (const SplitComponent& c : components) {
    if (c.lambda < 0.0) fail_precondition("splitting_action: negative weight");
    lsum += c.lambda;
    for (std::size_t k = 0; k < K; ++k) bary[k] += c.lambda * c.point[k];
  }
  if (std::fabs(lsum - 1.0) > kTol.barycenter) fail_precondition("splitting_action: weights do not sum to one");
  if (l1_distance(bary, p) > kTol.barycenter) fail_precondition("splitting_action: barycenter mismatch");

  StackedMixed a(K, I);
  for (std::size_t k = 0; k < K; ++k) {
    if (p[k] <= 0.0) {
      for (std::size_t i = 0; i < I; ++i) a(k, i) = 1.0 / static_cast<double>(I);
      continue;
    }
    for (std::size_t s = 0; s < components.size(); ++s) {
      const double w = components[s].lambda * components[s].point[k] / p[k];
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < I; ++i) a(k, i) += w * actions[s](k, i);
    }
  }
  return a;
}

std::vector<AtomSplit> split_decomposition(const BeliefMeasure& u, const BeliefMeasure& v) {
  const ChoquetResult r = choquet_dominates(u, v);
  if (!r.dominates) fail_precondition("split_decomposition: u does not dominate v");
  std::vector<AtomSplit> out;
  const Matrix& x = r.certificate.coupling;
  for (std::size_t a = 0; a < u.size(); ++a) {
    AtomSplit s{u.atoms()[a].point, u.atoms()[a].weight, {}};
    double row = 0.0;
    for (std::size_t b = 0; b < v.size(); ++b) row += x(a, b);
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (x(a, b) <= 0.0) continue;
      s.parts.push_back({x(a, b) / row, v.atoms()[b].point});
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace rgs
