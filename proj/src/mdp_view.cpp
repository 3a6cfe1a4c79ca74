#include "rgs/mdp_view.hpp"

#include <algorithm>
#include <cmath>

#include "rgs/error.hpp"
#include "rgs/lp.hpp"

namespace rgs {

namespace {

double guaranteed(const AuxiliaryGame& game, const Belief& p, const StackedMixed& a) {
  double best = INFINITY;
  for (std::size_t j = 0; j < game.J(); ++j) {
    double v = 0.0;
    for (std::size_t k = 0; k < game.K(); ++k)
      for (std::size_t i = 0; i < game.I(); ++i) v += p[k] * a(k, i) * game.g(k, i, j);
    best = std::min(best, v);
  }
  return best;
}

}  // namespace

double mdp_reward(const AuxiliaryGame& game, const BeliefMeasure& u, const AtomRule& f) {
  if (f.size() != u.size()) fail_precondition("mdp_reward: rule does not match the support");
  double y = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) y += u.atoms()[s].weight * guaranteed(game, u.atoms()[s].point, f[s].second);
  return y;
}

BeliefMeasure mdp_transition(const AuxiliaryGame& game, const BeliefMeasure& u, const AtomRule& f) {
  if (f.size() != u.size()) fail_precondition("mdp_transition: rule does not match the support");
  std::vector<std::pair<double, BeliefMeasure>> parts;
  for (std::size_t s = 0; s < f.size(); ++s)
    parts.emplace_back(u.atoms()[s].weight, belief_transition(game, u.atoms()[s].point, f[s].second));
  return BeliefMeasure::mixture(parts);
}

MarkovPlay play_of_markov_strategy(const AuxiliaryGame& game, const BeliefMeasure& u, const Player1Strategy& sigma,
                                   std::size_t stages) {
  if (sigma.needs_opponent()) fail_precondition("play_of_markov_strategy: strategy must not depend on player 2");
  MarkovPlay play{u, {}};
  BeliefMeasure cur = u;
  for (std::size_t t = 1; t <= stages; ++t) {
    AtomRule f;
    for (const Atom& a : cur.atoms()) f.emplace_back(a.point, sigma.action(t, a.point, nullptr));
    PlayStep step{mdp_transition(game, cur, f), mdp_reward(game, cur, f)};
    cur = step.next;
    play.steps.push_back(std::move(step));
  }
  return play;
}

namespace {

struct StepProblem {
  const AuxiliaryGame& game;
  const BeliefMeasure& u;
  const BeliefMeasure& v;
  std::size_t A, K, I, D, Rn;
  std::size_t nx() const { return A * K * I; }
  std::size_t x(std::size_t a, std::size_t k, std::size_t i) const { return (a * K + k) * I + i; }
  std::size_t lam(std::size_t a, std::size_t d) const { return nx() + a * D + d; }

  // rows shared by every objective; assign[a*D+d] is the target atom of column (a,d)
  lp::Problem base(const std::vector<std::size_t>& assign, std::size_t extra, lp::Sense sense) const {
    lp::Problem pr(nx() + A * D + extra, sense);
    const std::size_t n = pr.num_vars();
    std::vector<double> row(n);
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t k = 0; k < K; ++k) {
        std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t i = 0; i < I; ++i) row[x(a, k, i)] = 1.0;
        pr.add_row(row, lp::RowType::Equal, u.atoms()[a].point[k]);
      }
    for (std::size_t a = 0; a < A; ++a)
      for (std::size_t d = 0; d < D; ++d) {
        const Belief& q = v.atoms()[assign[a * D + d]].point;
        for (std::size_t k2 = 0; k2 < K; ++k2) {
          std::fill(row.begin(), row.end(), 0.0);
          for (std::size_t k = 0; k < K; ++k)
            for (std::size_t i = 0; i < I; ++i) row[x(a, k, i)] = game.qbar(k, i)[k2 * D + d];
          row[lam(a, d)] = -q[k2];
          pr.add_row(row, lp::RowType::Equal, 0.0);
        }
      }
    for (std::size_t r = 0; r < Rn; ++r) {
      std::fill(row.begin(), row.end(), 0.0);
      for (std::size_t a = 0; a < A; ++a)
        for (std::size_t d = 0; d < D; ++d)
          if (assign[a * D + d] == r) row[lam(a, d)] = u.atoms()[a].weight;
      pr.add_row(row, lp::RowType::Equal, v.atoms()[r].weight);
    }
    return pr;
  }

  double reward(const std::vector<double>& xs) const {
    double y = 0.0;
    for (std::size_t a = 0; a < A; ++a) {
      double best = INFINITY;
      for (std::size_t j = 0; j < game.J(); ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k)
          for (std::size_t i = 0; i < I; ++i) s += xs[x(a, k, i)] * game.g(k, i, j);
        best = std::min(best, s);
      }
      y += u.atoms()[a].weight * best;
    }
    return y;
  }
};

}  // namespace

std::vector<AtomRule> markov_strategy_of_play(const AuxiliaryGame& game, const MarkovPlay& play,
                                              const RecoverOptions& opt) {
  std::vector<AtomRule> rules;
  BeliefMeasure cur = play.start;
  const std::size_t K = game.K(), I = game.I(), D = game.D(), J = game.J();
  for (std::size_t t = 1; t <= play.steps.size(); ++t) {
    const BeliefMeasure& next = play.steps[t - 1].next;
    const double y = play.steps[t - 1].payoff;
    const std::string where = "play step " + std::to_string(t) + ": ";
    if (cur.dim() != K || next.dim() != K) throw ValidationError(where + "belief dimension mismatch");
    StepProblem sp{game, cur, next, cur.size(), K, I, D, next.size()};

    // admissible target atoms per column: support inside what the column can reach
    std::vector<std::vector<std::size_t>> choices(sp.A * D);
    for (std::size_t a = 0; a < sp.A; ++a)
      for (std::size_t d = 0; d < D; ++d) {
        std::vector<char> reach(K, 0);
        bool any = false;
        for (std::size_t k = 0; k < K; ++k) {
          if (cur.atoms()[a].point[k] <= 0.0) continue;
          for (std::size_t i = 0; i < I; ++i)
            for (std::size_t k2 = 0; k2 < K; ++k2)
              if (game.qbar(k, i)[k2 * D + d] > 0.0) reach[k2] = any = 1;
        }
        auto& ch = choices[a * D + d];
        if (!any) {
          ch.push_back(0);  // column carries no mass
          continue;
        }
        for (std::size_t r = 0; r < sp.Rn; ++r) {
          bool ok = true;
          for (std::size_t k2 = 0; k2 < K; ++k2)
            if (next.atoms()[r].point[k2] > opt.tolerance && !reach[k2]) ok = false;
          if (ok) ch.push_back(r);
        }
        if (ch.empty()) ch.push_back(0);
      }

    std::vector<std::size_t> idx(choices.size(), 0), assign(choices.size());
    bool found = false;
    std::vector<double> xs;
    for (std::size_t tried = 0; tried < opt.max_assignments && !found; ++tried) {
      for (std::size_t c = 0; c < choices.size(); ++c) assign[c] = choices[c][idx[c]];
      std::vector<char> hit(sp.Rn, 0);
      for (std::size_t c = 0; c < assign.size(); ++c) hit[assign[c]] = 1;
      bool covers = true;
      for (std::size_t r = 0; r < sp.Rn; ++r)
        if (!hit[r] && next.atoms()[r].weight > 0.0) covers = false;

      if (covers) {
        // largest reward: z_a <= G_j x_a
        lp::Problem hi = sp.base(assign, sp.A, lp::Sense::Maximize);
        const std::size_t z0 = sp.nx() + sp.A * D;
        for (std::size_t a = 0; a < sp.A; ++a) {
          hi.set_free(z0 + a);
          hi.set_objective(z0 + a, cur.atoms()[a].weight);
          for (std::size_t j = 0; j < J; ++j) {
            std::vector<double> row(hi.num_vars(), 0.0);
            for (std::size_t k = 0; k < K; ++k)
              for (std::size_t i = 0; i < I; ++i) row[sp.x(a, k, i)] = -game.g(k, i, j);
            row[z0 + a] = 1.0;
            hi.add_row(row, lp::RowType::LessEq, 0.0);
          }
        }
        const lp::Solution shi = lp::solve(hi);
        if (shi.optimal() && shi.objective >= y - opt.tolerance) {
          std::vector<double> x_hi(shi.primal.begin(), shi.primal.begin() + static_cast<std::ptrdiff_t>(sp.nx()));
          // smallest reward: min over per-atom column choices of a linear program
          std::vector<double> x_lo;
          double y_lo = INFINITY;
          std::vector<std::size_t> js(sp.A, 0);
          while (true) {
            lp::Problem lo = sp.base(assign, 0, lp::Sense::Minimize);
            for (std::size_t a = 0; a < sp.A; ++a)
              for (std::size_t k = 0; k < K; ++k)
                for (std::size_t i = 0; i < I; ++i)
                  lo.set_objective(sp.x(a, k, i), cur.atoms()[a].weight * game.g(k, i, js[a]));
            const lp::Solution slo = lp::solve(lo);
            if (slo.optimal() && slo.objective < y_lo) {
              y_lo = slo.objective;
              x_lo.assign(slo.primal.begin(), slo.primal.begin() + static_cast<std::ptrdiff_t>(sp.nx()));
            }
            std::size_t a = sp.A;
            while (a > 0 && ++js[a - 1] == J) js[--a] = 0;
            if (a == 0) break;
          }
          if (!x_lo.empty() && y_lo <= y + opt.tolerance) {
            // reward is concave and continuous along the segment: bisect
            auto at = [&](double s) {
              std::vector<double> m(sp.nx());
              for (std::size_t e = 0; e < m.size(); ++e) m[e] = (1.0 - s) * x_lo[e] + s * x_hi[e];
              return m;
            };
            double lo_s = 0.0, hi_s = 1.0;
            if (sp.reward(x_lo) >= y) hi_s = 0.0;
            for (int it = 0; it < 200 && hi_s > 0.0; ++it) {
              const double mid = 0.5 * (lo_s + hi_s);
              (sp.reward(at(mid)) >= y ? hi_s : lo_s) = mid;
            }
            xs = at(hi_s);
            found = true;
          }
        }
      }
      std::size_t c = choices.size();
      while (c > 0 && ++idx[c - 1] == choices[c - 1].size()) idx[--c] = 0;
      if (c == 0) break;
    }
    if (!found) throw Error(where + "no decision rule realizes the transition and payoff");

    AtomRule f;
    for (std::size_t a = 0; a < sp.A; ++a) {
      const Belief& p = cur.atoms()[a].point;
      StackedMixed act(K, I);
      for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < I; ++i)
          act(k, i) = p[k] > 0.0 ? std::max(0.0, xs[sp.x(a, k, i)]) / p[k] : 1.0 / static_cast<double>(I);
      for (std::size_t k = 0; k < K; ++k) {
        std::vector<double> r(act.row(k).begin(), act.row(k).end());
        normalize_simplex(r, 1e-6, "recovered action");
        for (std::size_t i = 0; i < I; ++i) act(k, i) = r[i];
      }
      f.emplace_back(p, std::move(act));
    }
    const double w = wasserstein(mdp_transition(game, cur, f), next).value;
    const double dy = std::fabs(mdp_reward(game, cur, f) - y);
    if (w > 1e3 * opt.tolerance || dy > 1e3 * opt.tolerance)
      throw Error(where + "recovered rule misses the play (transport " + std::to_string(w) + ", payoff " +
                  std::to_string(dy) + ")");
    rules.push_back(std::move(f));
    cur = next;
  }
  return rules;
}

std::shared_ptr<MarkovStrategy1> strategy_from_rules(const std::vector<AtomRule>& rules) {
  std::vector<Player1Rule> out;
  for (const AtomRule& f : rules) {
    Player1Rule r;
    r.table = f;
    out.push_back(std::move(r));
  }
  return std::make_shared<MarkovStrategy1>(std::move(out), "recovered");
}

}  // namespace rgs
