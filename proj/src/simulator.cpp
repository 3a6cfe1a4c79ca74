#include "rgs/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rgs/error.hpp"
#include "rgs/parallel.hpp"
#include "rgs/rng.hpp"

namespace rgs {

namespace {

void check_mixed(const std::vector<double>& x, std::size_t size, std::size_t stage, const std::string& who) {
  if (x.size() != size || simplex_violation(x) > 1e-9)
    throw Error(who + " emitted an invalid distribution at stage " + std::to_string(stage));
}

PayoffStats summarize(const std::vector<double>& per_rep, std::size_t horizon) {
  PayoffStats s;
  s.horizon = horizon;
  s.replications = per_rep.size();
  for (double x : per_rep) s.mean += x;
  s.mean /= static_cast<double>(per_rep.size());
  if (per_rep.size() > 1) {
    double ss = 0.0;
    for (double x : per_rep) ss += (x - s.mean) * (x - s.mean);
    s.stderr_ = std::sqrt(ss / static_cast<double>(per_rep.size() - 1) / static_cast<double>(per_rep.size()));
  }
  s.ci = 1.96 * s.stderr_;
  return s;
}

}  // namespace

SimulationResult simulate(const AuxiliaryGame& game, const Player1Strategy& p1, const Player2Strategy& p2,
                          const PlayoutConfig& cfg, const std::vector<std::size_t>& horizons_in) {
  if (cfg.horizon == 0 || cfg.replications == 0) fail_precondition("simulate: horizon and replications must be positive");
  if (p1.needs_opponent() && p2.needs_opponent())
    fail_precondition("simulate: both strategies wait for the other's action");
  std::vector<std::size_t> horizons = horizons_in;
  for (std::size_t h : horizons)
    if (h == 0 || h > cfg.horizon) fail_precondition("simulate: horizon list must lie in [1, horizon]");

  const RepeatedGameSpec& s = game.spec();
  const std::size_t K = s.K(), I = s.I(), J = s.J(), C = s.C(), D = s.D(), N = cfg.horizon, R = cfg.replications;
  const std::vector<double> pibar = initial_marginal(s);

  std::vector<double> stage_sum(R * N);
  std::vector<std::vector<TraceRow>> traces(cfg.trace ? R : 0);

  parallel_for(R, cfg.jobs, [&](std::size_t r) {
    PhiloxStream rng(cfg.seed, r);
    std::size_t o = rng.categorical(s.initial);
    std::size_t k = o / (C * D), d = o % D;
    Belief p(K);
    double mass = 0.0;
    for (std::size_t kk = 0; kk < K; ++kk) mass += pibar[kk * D + d];
    for (std::size_t kk = 0; kk < K; ++kk) p[kk] = pibar[kk * D + d] / mass;

    for (std::size_t t = 1; t <= N; ++t) {
      StackedMixed a;
      Mixed b;
      if (p1.needs_opponent()) {
        b = p2.action(t, p, nullptr);
        check_mixed(b, J, t, p2.name());
        a = p1.action(t, p, &b);
      } else {
        a = p1.action(t, p, nullptr);
        if (a.states() != K || a.actions() != I || a.simplex_violation() > 1e-9)
          throw Error(p1.name() + " emitted an invalid distribution at stage " + std::to_string(t));
        b = p2.action(t, p, &a);
        check_mixed(b, J, t, p2.name());
      }
      // player 1 knows k through the signal (HA')
      const std::size_t i = rng.categorical(a.row(k));
      const std::size_t j = rng.categorical(b);
      const double pay = s.g(k, i, j);
      stage_sum[r * N + t - 1] = pay;
      if (cfg.trace) traces[r].push_back({r, t, k, i, j, pay});

      o = rng.categorical(std::span<const double>(s.q(k, i, j), s.outcomes()));
      const std::size_t k2 = o / (C * D), d2 = o % D;
      // posterior from the declared action and the public signal
      Belief next(K, 0.0);
      double tot = 0.0;
      for (std::size_t kk = 0; kk < K; ++kk) {
        if (p[kk] <= 0.0) continue;
        for (std::size_t ii = 0; ii < I; ++ii) {
          const double w = p[kk] * a(kk, ii);
          if (w <= 0.0) continue;
          const double* qb = game.qbar(kk, ii);
          for (std::size_t k3 = 0; k3 < K; ++k3) next[k3] += w * qb[k3 * D + d2];
        }
      }
      for (double x : next) tot += x;
      if (tot <= 0.0) throw Error("simulate: realized signal has zero probability under the declared action at stage " +
                                  std::to_string(t));
      for (double& x : next) x /= tot;
      p = std::move(next);
      k = k2;
    }
  });

  SimulationResult out;
  auto at = [&](std::size_t h) {
    std::vector<double> per_rep(R);
    for (std::size_t r = 0; r < R; ++r) {
      double acc = 0.0;
      for (std::size_t t = 0; t < h; ++t) acc += stage_sum[r * N + t];
      per_rep[r] = acc / static_cast<double>(h);
    }
    return summarize(per_rep, h);
  };
  out.stats = at(N);
  out.stats.stage_means.assign(N, 0.0);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t t = 0; t < N; ++t) out.stats.stage_means[t] += stage_sum[r * N + t];
  for (double& x : out.stats.stage_means) x /= static_cast<double>(R);
  for (std::size_t h : horizons) out.at_horizons.push_back(at(h));
  for (auto& tr : traces) out.trace.insert(out.trace.end(), tr.begin(), tr.end());
  return out;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "replication,stage,k,i,j,payoff\n";
  for (const TraceRow& r : rows)
    os << r.replication << ',' << r.stage << ',' << r.k << ',' << r.i << ',' << r.j << ',' << r.payoff << '\n';
  return os.str();
}

bool GuaranteeReport::passed() const {
  return std::all_of(cells.begin(), cells.end(), [](const GuaranteeCell& c) { return c.pass; });
}

namespace {

std::size_t longest(const std::vector<std::size_t>& h) {
  if (h.empty()) fail_precondition("guarantee_check: no horizons");
  return *std::max_element(h.begin(), h.end());
}

}  // namespace

GuaranteeReport guarantee_check_p1(const AuxiliaryGame& game, const Player1Strategy& sigma, double v, double eps,
                                   const std::vector<std::size_t>& horizons,
                                   const std::vector<std::shared_ptr<const Player2Strategy>>& suite,
                                   PlayoutConfig cfg) {
  GuaranteeReport rep{GuaranteeMode::Player1, v, eps, kAdversarySuiteVersion, {}};
  cfg.horizon = longest(horizons);
  cfg.trace = false;
  for (const auto& adv : suite) {
    const SimulationResult res = simulate(game, sigma, *adv, cfg, horizons);
    for (const PayoffStats& st : res.at_horizons)
      rep.cells.push_back({adv->name(), st.horizon, st.mean, st.ci, st.mean >= v - eps - st.ci});
  }
  return rep;
}

GuaranteeReport guarantee_check_p2(const AuxiliaryGame& game, const Player2Strategy& tau, double v, double eps,
                                   const std::vector<std::size_t>& horizons,
                                   const std::vector<std::shared_ptr<const Player1Strategy>>& suite,
                                   PlayoutConfig cfg) {
  GuaranteeReport rep{GuaranteeMode::Player2, v, eps, kAdversarySuiteVersion, {}};
  cfg.horizon = longest(horizons);
  cfg.trace = false;
  for (const auto& adv : suite) {
    const SimulationResult res = simulate(game, *adv, tau, cfg, horizons);
    for (const PayoffStats& st : res.at_horizons)
      rep.cells.push_back({adv->name(), st.horizon, st.mean, st.ci, st.mean <= v + eps + st.ci});
  }
  return rep;
}

}  // namespace rgs
