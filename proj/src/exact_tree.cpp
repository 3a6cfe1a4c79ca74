#include "rgs/exact_tree.hpp"

#include <algorithm>
#include <cmath>

#include "rgs/error.hpp"
#include "rgs/lp.hpp"

namespace rgs {

ExactTreeResult value_theta_exact(const AuxiliaryGame& game, const ThetaWeights& theta, const Belief& p,
                                  const ExactTreeOptions& options) {
  const std::size_t T = theta.max_stage();
  if (T > options.max_stage)
    throw GuardError("value_theta_exact: stage " + std::to_string(T) + " exceeds the depth guard " +
                     std::to_string(options.max_stage));
  const std::size_t K = game.K(), I = game.I(), J = game.J();

  // public signals that some transition can emit; the others only label the start
  std::vector<std::size_t> signals;
  for (std::size_t d = 0; d < game.D(); ++d) {
    bool used = false;
    for (std::size_t k = 0; k < K && !used; ++k)
      for (std::size_t i = 0; i < I && !used; ++i)
        for (std::size_t k2 = 0; k2 < K && !used; ++k2) used = game.qbar(k, i)[k2 * game.D() + d] > 0.0;
    if (used) signals.push_back(d);
  }
  const std::size_t D = signals.size();

  // nodes by depth; node n at depth t has D children at depth t+1
  std::size_t nodes = 0, width = 1;
  std::vector<std::size_t> first(T + 1);
  for (std::size_t t = 0; t < T; ++t) {
    first[t] = nodes;
    nodes += width;
    if (nodes > options.max_nodes) throw GuardError("value_theta_exact: tree too large");
    width *= D;
  }
  first[T] = nodes;
  auto parent_of = [&](std::size_t t, std::size_t n) { return first[t - 1] + (n - first[t]) / D; };

  // (node, state) pairs that can carry mass; the others are fixed at zero and left out
  std::vector<char> live(nodes * K, 0);
  for (std::size_t k = 0; k < K; ++k) live[k] = p[k] > 0.0;
  for (std::size_t t = 1; t < T; ++t)
    for (std::size_t n = first[t]; n < first[t + 1]; ++n) {
      const std::size_t par = parent_of(t, n), d = signals[(n - first[t]) % D];
      for (std::size_t k2 = 0; k2 < K; ++k2)
        for (std::size_t k = 0; k < K && !live[n * K + k2]; ++k)
          if (live[par * K + k])
            for (std::size_t i = 0; i < I; ++i)
              if (game.qbar(k, i)[k2 * game.D() + d] > 0.0) live[n * K + k2] = 1;
    }
  std::vector<std::size_t> xbase(nodes * K, SIZE_MAX);
  std::size_t nv = 0;
  for (std::size_t e = 0; e < nodes * K; ++e)
    if (live[e]) {
      xbase[e] = nv;
      nv += I;
    }
  auto node_live = [&](std::size_t n) {
    for (std::size_t k = 0; k < K; ++k)
      if (live[n * K + k]) return true;
    return false;
  };

  // one z per live node with positive stage weight
  std::vector<std::size_t> zvar(nodes, SIZE_MAX);
  for (std::size_t t = 0; t < T; ++t)
    if (theta.weight(t + 1) > 0.0)
      for (std::size_t n = first[t]; n < first[t + 1]; ++n)
        if (node_live(n)) zvar[n] = nv++;

  lp::Problem prob(nv, lp::Sense::Maximize);
  auto x = [&](std::size_t n, std::size_t k, std::size_t i) { return xbase[n * K + k] + i; };
  std::vector<lp::Entry> row;
  for (std::size_t k = 0; k < K; ++k) {
    if (!live[k]) continue;
    row.clear();
    for (std::size_t i = 0; i < I; ++i) row.push_back({x(0, k, i), 1.0});
    prob.add_row(row, lp::RowType::Equal, p[k]);
  }
  std::size_t root_j_row = SIZE_MAX;
  for (std::size_t t = 0; t < T; ++t) {
    const double w = theta.weight(t + 1);
    for (std::size_t n = first[t]; n < first[t + 1]; ++n) {
      if (!node_live(n)) continue;
      if (w > 0.0) {
        prob.set_objective(zvar[n], w);
        prob.set_free(zvar[n]);
        for (std::size_t j = 0; j < J; ++j) {
          row.clear();
          for (std::size_t k = 0; k < K; ++k)
            if (live[n * K + k])
              for (std::size_t i = 0; i < I; ++i)
                if (game.g(k, i, j) != 0.0) row.push_back({x(n, k, i), -game.g(k, i, j)});
          row.push_back({zvar[n], 1.0});
          const std::size_t r = prob.add_row(row, lp::RowType::LessEq, 0.0);
          if (n == 0 && j == 0) root_j_row = r;
        }
      }
      if (t + 1 == T) continue;
      const std::size_t local = n - first[t];
      for (std::size_t c = 0; c < D; ++c) {
        const std::size_t child = first[t + 1] + local * D + c;
        const std::size_t d = signals[c];
        for (std::size_t k2 = 0; k2 < K; ++k2) {
          if (!live[child * K + k2]) continue;
          row.clear();
          for (std::size_t i = 0; i < I; ++i) row.push_back({x(child, k2, i), 1.0});
          for (std::size_t k = 0; k < K; ++k)
            if (live[n * K + k])
              for (std::size_t i = 0; i < I; ++i) {
                const double q = game.qbar(k, i)[k2 * game.D() + d];
                if (q != 0.0) row.push_back({x(n, k, i), -q});
              }
          prob.add_row(row, lp::RowType::Equal, 0.0);
        }
      }
    }
  }

  const lp::Solution s = lp::solve(prob);
  if (!s.optimal()) throw NumericalError(std::string("value_theta_exact: LP ended ") + lp::to_string(s.status));
  ExactTreeResult out;
  out.nodes = nodes;
  out.value = s.objective;
  const double slack = s.diag.primal_residual * static_cast<double>(nv) + s.diag.duality_gap +
                       s.diag.dual_residual * static_cast<double>(nv) + 1e-9;
  out.bounds = {std::max(0.0, s.objective - slack), std::min(1.0, s.objective + slack)};
  out.a = StackedMixed(K, I);
  for (std::size_t k = 0; k < K; ++k) {
    double m = 0.0;
    if (live[k])
      for (std::size_t i = 0; i < I; ++i) m += std::max(0.0, s.primal[x(0, k, i)]);
    for (std::size_t i = 0; i < I; ++i)
      out.a(k, i) = m > 0.0 ? std::max(0.0, s.primal[x(0, k, i)]) / m : 1.0 / static_cast<double>(I);
  }
  out.b.assign(J, 1.0 / static_cast<double>(J));
  if (root_j_row != SIZE_MAX) {
    double tot = 0.0;
    for (std::size_t j = 0; j < J; ++j) tot += std::max(0.0, s.dual[root_j_row + j]);
    if (tot > 0.0)
      for (std::size_t j = 0; j < J; ++j) out.b[j] = std::max(0.0, s.dual[root_j_row + j]) / tot;
  }
  return out;
}

Bounds value_theta_exact(const AuxiliaryGame& game, const ThetaWeights& theta, const BeliefMeasure& u,
                         const ExactTreeOptions& options) {
  Bounds b;
  for (const Atom& a : u.atoms()) {
    const ExactTreeResult r = value_theta_exact(game, theta, a.point, options);
    b.lower += a.weight * r.bounds.lower;
    b.upper += a.weight * r.bounds.upper;
  }
  return b;
}

}  // namespace rgs
