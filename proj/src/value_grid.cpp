#include "rgs/value_grid.hpp"

#include <algorithm>
#include <cmath>

#include "rgs/error.hpp"
#include "rgs/kernels.hpp"
#include "rgs/parallel.hpp"

namespace rgs {

double ValueGrid::lower_at(const Belief& p) const {
  const SimplexLattice& L = *lattice;
  const double env = kernels::active().envelope_lower(L.soa().data(), L.size(), L.size(), L.dim(), lower.data(), p.data());
  return std::max({env, lower_hull->value(p.data()), 0.0});
}

double ValueGrid::upper_at(const Belief& p) const {
  const SimplexLattice& L = *lattice;
  const double env = kernels::active().envelope_upper(L.soa().data(), L.size(), L.size(), L.dim(), upper.data(), p.data());
  return std::min({env, upper_planes->value(p.data()), 1.0});
}

double ValueGrid::max_gap() const {
  double g = 0.0;
  for (std::size_t x = 0; x < lower.size(); ++x) g = std::max(g, upper[x] - lower[x]);
  return g;
}

Bounds evaluate_measure(const ValueGrid& grid, const BeliefMeasure& u) {
  if (u.dim() != grid.lattice->dim()) fail_precondition("evaluate_measure: dimension mismatch");
  Bounds b;
  for (const Atom& a : u.atoms()) {
    b.lower += a.weight * grid.lower_at(a.point);
    b.upper += a.weight * grid.upper_at(a.point);
  }
  return b;
}

double default_delta(std::size_t states) {
  if (states <= 1) return 1.0;
  if (states == 2) return 1.0 / 32.0;
  if (states == 3) return 1.0 / 16.0;
  return 1.0 / 8.0;
}

ValueEngine::ValueEngine(std::shared_ptr<const AuxiliaryGame> game, EngineConfig config)
    : game_(std::move(game)), config_(config) {
  delta_ = config_.delta > 0.0 ? config_.delta : default_delta(game_->K());
  const std::size_t N = game_->K() == 1 ? 1 : SimplexLattice::resolution_for(delta_);
  lattice_ = std::make_shared<const SimplexLattice>(game_->K(), N);
}

std::size_t ValueEngine::cache_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.size();
}

std::shared_ptr<const ValueGrid> ValueEngine::step(const ThetaWeights& theta,
                                                   std::shared_ptr<const ValueGrid> next) const {
  const SimplexLattice& L = *lattice_;
  const std::size_t G = L.size(), K = L.dim();
  const double alpha = theta.weight(1);
  auto grid = std::make_shared<ValueGrid>();
  grid->lattice = lattice_;
  grid->delta = delta_;
  grid->label = "theta=" + theta.to_string();
  grid->theta = theta;
  grid->alpha = alpha;
  grid->next = next;
  grid->lower.resize(G);
  grid->upper.resize(G);
  grid->argmax.resize(G);
  grid->minimizer.resize(G);
  std::vector<std::vector<double>> planes(G);

  const ConcavePL* lo_cont = next ? static_cast<const ConcavePL*>(next->lower_hull.get()) : nullptr;
  const ConcavePL* up_cont = next ? static_cast<const ConcavePL*>(next->upper_planes.get()) : nullptr;
  if (alpha < 1.0 && !next) fail_precondition("ValueEngine: continuation grid missing");

  parallel_for(G, config_.jobs, [&](std::size_t g) {
    const Belief p = L.point(g);
    StageLPResult lo = stage_lp(*game_, p, alpha, alpha < 1.0 ? lo_cont : nullptr, config_.stage);
    StageLPResult up = alpha < 1.0 ? stage_lp(*game_, p, alpha, up_cont, config_.stage) : lo;
    double l = std::clamp(lo.achieved, 0.0, 1.0);
    double u = std::clamp(up.certified_upper, 0.0, 1.0);
    if (l > u) {
      if (l > u + 1e-7)
        throw NumericalError("ValueEngine: lower bound exceeds upper bound at grid point " + std::to_string(g));
      l = u;
    }
    grid->lower[g] = l;
    grid->upper[g] = u;
    grid->argmax[g] = std::move(lo.a);
    grid->minimizer[g] = std::move(up.b);
    planes[g] = std::move(up.plane);
  });

  auto ps = std::make_shared<PlaneSet>(K);
  for (const auto& pl : planes) ps->add(pl.data());
  const std::vector<double> one(K, 1.0);
  ps->add(one.data());
  grid->upper_planes = ps;

  std::vector<double> pts(G * K);
  for (std::size_t g = 0; g < G; ++g)
    for (std::size_t k = 0; k < K; ++k) pts[g * K + k] = L.soa()[k * G + g];
  grid->lower_hull = std::make_shared<PointHull>(K, std::move(pts), grid->lower);
  grid->warning = grid->max_gap() > 0.5;
  return grid;
}

std::shared_ptr<const ValueGrid> ValueEngine::theta_grid(const ThetaWeights& theta) {
  std::lock_guard<std::mutex> lock(mu_);
  // walk the suffix chain down to a cached grid or a terminal weight
  std::vector<ThetaWeights> chain{theta};
  std::shared_ptr<const ValueGrid> next;
  while (true) {
    const ThetaWeights& cur = chain.back();
    auto hit = cache_.find(cur.key());
    if (hit != cache_.end()) {
      next = hit->second;
      chain.pop_back();
      break;
    }
    if (cur.weight(1) >= 1.0 - 1e-15) break;
    chain.push_back(theta_plus(cur));
  }
  for (std::size_t c = chain.size(); c-- > 0;) {
    next = step(chain[c], next);
    cache_[chain[c].key()] = next;
  }
  return next;
}

std::shared_ptr<const ValueGrid> ValueEngine::v_n(std::size_t n) {
  auto g = theta_grid(ThetaWeights::uniform(n));
  return g;
}

std::shared_ptr<const ValueGrid> ValueEngine::v_mn(std::size_t m, std::size_t n) {
  return theta_grid(ThetaWeights::uniform_window(m, n));
}

std::shared_ptr<const ValueGrid> value_theta_grid(std::shared_ptr<const AuxiliaryGame> game,
                                                  const ThetaWeights& theta, double delta) {
  EngineConfig cfg;
  cfg.delta = delta;
  ValueEngine e(std::move(game), cfg);
  return e.theta_grid(theta);
}

std::shared_ptr<const ValueGrid> value_mn(std::shared_ptr<const AuxiliaryGame> game, std::size_t m, std::size_t n,
                                          double delta) {
  EngineConfig cfg;
  cfg.delta = delta;
  ValueEngine e(std::move(game), cfg);
  return e.v_mn(m, n);
}

GridAudit audit_concavity(const ValueGrid& grid) {
  const SimplexLattice& L = *grid.lattice;
  GridAudit a;
  const double slack = 2.0 * grid.delta;
  std::vector<int> mid(L.dim());
  for (std::size_t x = 0; x < L.size(); ++x)
    for (std::size_t y = x + 1; y < L.size(); ++y) {
      bool even = true;
      for (std::size_t k = 0; k < L.dim() && even; ++k) {
        const int s = L.composition(x)[k] + L.composition(y)[k];
        even = s % 2 == 0;
        mid[k] = s / 2;
      }
      if (!even) continue;
      const std::size_t m = L.index_of(mid);
      ++a.pairs;
      const double excess = 0.5 * (grid.lower[x] + grid.lower[y]) - slack - grid.upper[m];
      if (excess > 1e-9) {
        ++a.violations;
        a.worst = std::max(a.worst, excess);
      }
    }
  return a;
}

GridAudit audit_lipschitz(const ValueGrid& grid) {
  const SimplexLattice& L = *grid.lattice;
  GridAudit a;
  for (std::size_t x = 0; x < L.size(); ++x)
    for (std::size_t y = 0; y < L.size(); ++y) {
      if (x == y) continue;
      ++a.pairs;
      const double dist = l1_distance(L.point(x), L.point(y));
      const double excess = grid.lower[x] - grid.upper[y] - dist;
      if (excess > 1e-9) {
        ++a.violations;
        a.worst = std::max(a.worst, excess);
      }
    }
  return a;
}

}  // namespace rgs
