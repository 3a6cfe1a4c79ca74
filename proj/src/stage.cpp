#include "rgs/stage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rgs/error.hpp"
#include "rgs/lattice.hpp"
#include "rgs/lp.hpp"
#include "rgs/zerosum.hpp"

namespace rgs {

namespace {

struct Layout {
  std::size_t K, I, J, D;
  bool has_z, has_w;
  std::size_t nx() const { return K * I; }
  std::size_t z() const { return nx(); }
  std::size_t w(std::size_t d) const { return nx() + (has_z ? 1 : 0) + d; }
  std::size_t nvars() const { return nx() + (has_z ? 1 : 0) + (has_w ? D : 0); }
};

// coefficient of x(k,i) in c.Y_d(x)
void cut_row(const AuxiliaryGame& game, const Layout& L, std::size_t d, const double* plane,
             std::vector<lp::Entry>& row) {
  row.clear();
  for (std::size_t k = 0; k < L.K; ++k)
    for (std::size_t i = 0; i < L.I; ++i) {
      const double* q = game.qbar(k, i);
      double s = 0.0;
      for (std::size_t k2 = 0; k2 < L.K; ++k2) s += plane[k2] * q[k2 * L.D + d];
      if (s != 0.0) row.push_back({k * L.I + i, -s});
    }
  row.push_back({L.w(d), 1.0});
}

// Y_d(x) for all d: out[d * K + k']
void posteriors(const AuxiliaryGame& game, const Layout& L, const std::vector<double>& x, std::vector<double>& out) {
  out.assign(L.D * L.K, 0.0);
  for (std::size_t k = 0; k < L.K; ++k)
    for (std::size_t i = 0; i < L.I; ++i) {
      const double xi = x[k * L.I + i];
      if (xi <= 0.0) continue;
      const double* q = game.qbar(k, i);
      for (std::size_t k2 = 0; k2 < L.K; ++k2)
        for (std::size_t d = 0; d < L.D; ++d) out[d * L.K + k2] += xi * q[k2 * L.D + d];
    }
}

double continuation_value(const Layout& L, const std::vector<double>& Y, const ConcavePL& f) {
  double s = 0.0;
  std::vector<double> q(L.K);
  for (std::size_t d = 0; d < L.D; ++d) {
    double m = 0.0;
    for (std::size_t k = 0; k < L.K; ++k) m += Y[d * L.K + k];
    if (m <= 0.0) continue;
    for (std::size_t k = 0; k < L.K; ++k) q[k] = Y[d * L.K + k] / m;
    s += m * f.value(q.data());
  }
  return s;
}

}  // namespace

StageLPResult stage_lp(const AuxiliaryGame& game, const Belief& p, double alpha, const ConcavePL* cont,
                       const StageLPOptions& options) {
  if (alpha < 0.0 || alpha > 1.0) fail_precondition("stage_lp: alpha outside [0,1]");
  Layout L{game.K(), game.I(), game.J(), game.D(), alpha > 0.0, alpha < 1.0};
  if (L.has_w && !cont) fail_precondition("stage_lp: continuation required when alpha < 1");
  if (p.size() != L.K) fail_precondition("stage_lp: belief has wrong dimension");

  lp::Problem base(L.nvars(), lp::Sense::Maximize);
  std::vector<lp::Entry> row;
  for (std::size_t k = 0; k < L.K; ++k) {
    row.clear();
    for (std::size_t i = 0; i < L.I; ++i) row.push_back({k * L.I + i, 1.0});
    base.add_row(row, lp::RowType::Equal, std::max(0.0, p[k]));
  }
  if (L.has_z) {
    base.set_objective(L.z(), alpha);
    base.set_free(L.z());
    for (std::size_t j = 0; j < L.J; ++j) {
      row.clear();
      for (std::size_t k = 0; k < L.K; ++k)
        for (std::size_t i = 0; i < L.I; ++i)
          if (game.g(k, i, j) != 0.0) row.push_back({k * L.I + i, -game.g(k, i, j)});
      row.push_back({L.z(), 1.0});
      base.add_row(row, lp::RowType::LessEq, 0.0);
    }
  }
  double plane_bound = 1.0;
  if (L.has_w) {
    std::vector<double> x0(L.nx()), Y, q(L.K), plane(L.K);
    for (std::size_t k = 0; k < L.K; ++k)
      for (std::size_t i = 0; i < L.I; ++i) x0[k * L.I + i] = std::max(0.0, p[k]) / static_cast<double>(L.I);
    posteriors(game, L, x0, Y);
    for (std::size_t d = 0; d < L.D; ++d) {
      base.set_objective(L.w(d), 1.0 - alpha);
      base.set_free(L.w(d));
      double m = 0.0;
      for (std::size_t k = 0; k < L.K; ++k) m += Y[d * L.K + k];
      for (std::size_t k = 0; k < L.K; ++k) q[k] = m > 0.0 ? Y[d * L.K + k] / m : 1.0 / static_cast<double>(L.K);
      cont->support(q.data(), plane.data());
      for (double c : plane) plane_bound = std::max(plane_bound, std::fabs(c));
      cut_row(game, L, d, plane.data(), row);
      base.add_row(row, lp::RowType::LessEq, 0.0);
    }
  }

  StageLPResult out;
  lp::Solution sol;
  std::vector<double> Y, q(L.K), plane(L.K);
  while (true) {
    sol = lp::solve(base);
    if (!sol.optimal()) throw NumericalError(std::string("stage_lp: master LP ") + lp::to_string(sol.status));
    ++out.rounds;
    if (!L.has_w) break;
    posteriors(game, L, sol.primal, Y);
    bool added = false;
    for (std::size_t d = 0; d < L.D; ++d) {
      double m = 0.0;
      for (std::size_t k = 0; k < L.K; ++k) m += Y[d * L.K + k];
      if (m <= 1e-15) continue;
      for (std::size_t k = 0; k < L.K; ++k) q[k] = Y[d * L.K + k] / m;
      const double fv = cont->value(q.data());
      if (sol.primal[L.w(d)] > m * fv + options.cut_tol) {
        cont->support(q.data(), plane.data());
        for (double c : plane) plane_bound = std::max(plane_bound, std::fabs(c));
        cut_row(game, L, d, plane.data(), row);
        base.add_row(row, lp::RowType::LessEq, 0.0);
        ++out.cuts;
        added = true;
      }
    }
    if (!added) break;
    if (out.rounds >= options.max_rounds) throw NumericalError("stage_lp: cutting planes did not converge");
  }

  std::vector<double> x(sol.primal.begin(), sol.primal.begin() + static_cast<long>(L.nx()));
  for (double& v : x) v = std::max(0.0, v);

  // achieved value of the recovered action
  out.a = StackedMixed(L.K, L.I);
  for (std::size_t k = 0; k < L.K; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < L.I; ++i) s += x[k * L.I + i];
    for (std::size_t i = 0; i < L.I; ++i)
      out.a(k, i) = s > 0.0 ? x[k * L.I + i] / s : 1.0 / static_cast<double>(L.I);
  }
  std::vector<double> xa(L.nx());
  for (std::size_t k = 0; k < L.K; ++k)
    for (std::size_t i = 0; i < L.I; ++i) xa[k * L.I + i] = std::max(0.0, p[k]) * out.a(k, i);
  double achieved = 0.0;
  if (L.has_z) {
    double mn = INFINITY;
    for (std::size_t j = 0; j < L.J; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < L.K; ++k)
        for (std::size_t i = 0; i < L.I; ++i) s += xa[k * L.I + i] * game.g(k, i, j);
      mn = std::min(mn, s);
    }
    achieved += alpha * mn;
  }
  if (L.has_w) {
    posteriors(game, L, xa, Y);
    achieved += (1.0 - alpha) * continuation_value(L, Y, *cont);
  }
  out.achieved = achieved;
  out.relaxed = sol.objective;

  // certified majorant from the duals: clamp signs, then pay for reduced-cost residuals
  std::vector<double> y = sol.dual;
  for (std::size_t r = 0; r < base.num_rows(); ++r)
    if (base.row_type(r) == lp::RowType::LessEq) y[r] = std::max(0.0, y[r]);
  double slack = 0.0;
  for (std::size_t j = 0; j < base.num_vars(); ++j) {
    double red = base.objective(j);
    for (std::size_t r = 0; r < base.num_rows(); ++r) red -= y[r] * base.coeff(r, j);
    const double bound = j < L.nx() ? 1.0 : (L.has_z && j == L.z() ? 1.0 : plane_bound);
    slack += (base.is_free(j) ? std::fabs(red) : std::max(0.0, red)) * bound;
  }
  out.plane.assign(L.K, slack);
  for (std::size_t k = 0; k < L.K; ++k) out.plane[k] += y[k];
  double up = 0.0;
  for (std::size_t k = 0; k < L.K; ++k) up += out.plane[k] * std::max(0.0, p[k]);
  out.certified_upper = std::max(up, out.achieved);

  out.b.assign(L.J, 1.0 / static_cast<double>(L.J));
  if (L.has_z) {
    double s = 0.0;
    for (std::size_t j = 0; j < L.J; ++j) s += y[L.K + j];
    if (s > 0.0)
      for (std::size_t j = 0; j < L.J; ++j) out.b[j] = y[L.K + j] / s;
  }
  return out;
}

double stage_objective(const AuxiliaryGame& game, const Belief& p, double alpha, const StackedMixed& a,
                       const std::function<double(const BeliefMeasure&)>& continuation) {
  double v = 0.0;
  if (alpha > 0.0) {
    double mn = INFINITY;
    Mixed e(game.J(), 0.0);
    for (std::size_t j = 0; j < game.J(); ++j) {
      std::fill(e.begin(), e.end(), 0.0);
      e[j] = 1.0;
      mn = std::min(mn, stage_payoff(game.spec(), p, a, e));
    }
    v += alpha * mn;
  }
  if (alpha < 1.0) v += (1.0 - alpha) * continuation(belief_transition(game, p, a));
  return v;
}

namespace {

void project_simplex(double* v, std::size_t n) {
  std::vector<double> u(v, v + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    css += u[r];
    const double t = (css - 1.0) / static_cast<double>(r + 1);
    if (u[r] - t > 0.0) theta = t;
  }
  for (std::size_t r = 0; r < n; ++r) v[r] = std::max(0.0, v[r] - theta);
}

}  // namespace

StageSolution stage_solve(const AuxiliaryGame& game, const Belief& p, double alpha,
                          const std::function<double(const BeliefMeasure&)>& continuation,
                          const StageSolveOptions& opt) {
  const std::size_t K = game.K(), I = game.I();
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < K; ++k)
    if (p[k] > 0.0) active.push_back(k);

  // candidate grid, coarsened until the product fits the budget
  std::size_t R = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(1.0 / opt.resolution)));
  std::unique_ptr<SimplexLattice> lat;
  while (true) {
    lat = std::make_unique<SimplexLattice>(I, R);
    double total = 1.0;
    for (std::size_t s = 0; s < active.size(); ++s) total *= static_cast<double>(lat->size());
    if (total <= static_cast<double>(opt.max_candidates) || R == 1) break;
    --R;
  }

  StageSolution out;
  auto eval = [&](const StackedMixed& a) {
    ++out.evaluations;
    return stage_objective(game, p, alpha, a, continuation);
  };

  struct Cand {
    double value;
    StackedMixed a;
  };
  std::vector<Cand> cands;
  std::vector<std::size_t> idx(active.size(), 0);
  while (true) {
    StackedMixed a = StackedMixed::uniform(K, I);
    for (std::size_t s = 0; s < active.size(); ++s) {
      const Belief row = lat->point(idx[s]);
      for (std::size_t i = 0; i < I; ++i) a(active[s], i) = row[i];
    }
    cands.push_back({eval(a), a});
    std::size_t s = 0;
    for (; s < active.size(); ++s) {
      if (++idx[s] < lat->size()) break;
      idx[s] = 0;
    }
    if (s == active.size()) break;
  }
  // strict improvement keeps the first (lexicographically smallest) candidate on ties
  std::size_t best = 0;
  for (std::size_t c = 1; c < cands.size(); ++c)
    if (cands[c].value > cands[best].value) best = c;

  // Nelder-Mead over the free coordinates of the active states
  const std::size_t dim = active.size() * (I - 1);
  StackedMixed best_a = cands[best].a;
  double best_v = cands[best].value;
  if (dim > 0) {
    auto to_action = [&](const std::vector<double>& z) {
      StackedMixed a = StackedMixed::uniform(K, I);
      std::vector<double> r(I);
      for (std::size_t s = 0; s < active.size(); ++s) {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < I; ++i) {
          r[i] = z[s * (I - 1) + i];
          sum += r[i];
        }
        r[I - 1] = 1.0 - sum;
        project_simplex(r.data(), I);
        for (std::size_t i = 0; i < I; ++i) a(active[s], i) = r[i];
      }
      return a;
    };
    std::vector<double> z0(dim);
    for (std::size_t s = 0; s < active.size(); ++s)
      for (std::size_t i = 0; i + 1 < I; ++i) z0[s * (I - 1) + i] = best_a(active[s], i);

    const double step = 0.5 / static_cast<double>(R);
    std::vector<std::vector<double>> simplex{z0};
    for (std::size_t d = 0; d < dim; ++d) {
      std::vector<double> z = z0;
      z[d] += (z[d] + step <= 1.0) ? step : -step;
      simplex.push_back(z);
    }
    std::vector<double> fv(simplex.size());
    for (std::size_t v = 0; v < simplex.size(); ++v) fv[v] = -eval(to_action(simplex[v]));

    std::size_t it = 0;
    for (; it < opt.nm_iterations; ++it) {
      std::vector<std::size_t> order(simplex.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
      std::vector<std::vector<double>> s2;
      std::vector<double> f2;
      for (std::size_t o : order) {
        s2.push_back(simplex[o]);
        f2.push_back(fv[o]);
      }
      simplex.swap(s2);
      fv.swap(f2);
      if (fv.back() - fv.front() <= opt.nm_tol) break;

      std::vector<double> c(dim, 0.0);
      for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
        for (std::size_t d = 0; d < dim; ++d) c[d] += simplex[v][d] / static_cast<double>(dim);
      auto along = [&](double t) {
        std::vector<double> z(dim);
        for (std::size_t d = 0; d < dim; ++d) z[d] = c[d] + t * (simplex.back()[d] - c[d]);
        return z;
      };
      const std::vector<double> xr = along(-1.0);
      const double fr = -eval(to_action(xr));
      if (fr < fv.front()) {
        const std::vector<double> xe = along(-2.0);
        const double fe = -eval(to_action(xe));
        if (fe < fr) {
          simplex.back() = xe;
          fv.back() = fe;
        } else {
          simplex.back() = xr;
          fv.back() = fr;
        }
      } else if (fr < fv[fv.size() - 2]) {
        simplex.back() = xr;
        fv.back() = fr;
      } else {
        const bool outside = fr < fv.back();
        const std::vector<double> xc = along(outside ? -0.5 : 0.5);
        const double fc = -eval(to_action(xc));
        if (fc < (outside ? fr : fv.back())) {
          simplex.back() = xc;
          fv.back() = fc;
        } else {
          for (std::size_t v = 1; v < simplex.size(); ++v) {
            for (std::size_t d = 0; d < dim; ++d) simplex[v][d] = simplex[0][d] + 0.5 * (simplex[v][d] - simplex[0][d]);
            fv[v] = -eval(to_action(simplex[v]));
          }
        }
      }
    }
    out.budget_exhausted = it >= opt.nm_iterations;
    std::size_t b = 0;
    for (std::size_t v = 1; v < fv.size(); ++v)
      if (fv[v] < fv[b]) b = v;
    out.gap_estimate = *std::max_element(fv.begin(), fv.end()) - fv[b];
    if (-fv[b] > best_v) {
      best_v = -fv[b];
      best_a = to_action(simplex[b]);
    }
  }
  out.value = best_v;
  out.a = best_a;

  // b*: matrix game over the best candidates (rows) and pure j (columns)
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cands[a].value > cands[b].value; });
  std::vector<StackedMixed> rows{best_a};
  for (std::size_t r = 0; r < order.size() && rows.size() < opt.b_candidates; ++r) rows.push_back(cands[order[r]].a);
  Matrix M(rows.size(), game.J());
  Mixed e(game.J(), 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double cv = alpha < 1.0 ? continuation(belief_transition(game, p, rows[r])) : 0.0;
    for (std::size_t j = 0; j < game.J(); ++j) {
      std::fill(e.begin(), e.end(), 0.0);
      e[j] = 1.0;
      M(r, j) = alpha * stage_payoff(game.spec(), p, rows[r], e) + (1.0 - alpha) * cv;
    }
  }
  out.b = matrix_game_value(M).col_strategy;
  return out;
}

}  // namespace rgs
