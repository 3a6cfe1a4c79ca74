// One line per acceptance criterion: "criterion N: PASS|FAIL  details".
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rgs/exact_tree.hpp"
#include "rgs/measures.hpp"
#include "rgs/simulator.hpp"
#include "rgs/spec_io.hpp"
#include "rgs/strategies.hpp"
#include "rgs/uniform.hpp"
#include "rgs/value_grid.hpp"

using namespace rgs;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

const std::vector<std::string> kCorpus{"k1_matching", "k1_skew",   "k1_rps",        "k1_dominant",
                                       "am_quadratic", "am_convex", "mc_switch",     "single_controller"};
const std::vector<std::string> kOneState{"k1_matching", "k1_skew", "k1_rps", "k1_dominant"};

std::shared_ptr<const AuxiliaryGame> load(const std::string& name) {
  return std::make_shared<const AuxiliaryGame>(load_spec(std::string(RGS_DATA_DIR) + "/" + name + ".json"));
}

Matrix payoff_matrix(const AuxiliaryGame& g, std::size_t k) {
  Matrix m(g.I(), g.J());
  for (std::size_t i = 0; i < g.I(); ++i)
    for (std::size_t j = 0; j < g.J(); ++j) m(i, j) = g.g(k, i, j);
  return m;
}

// ---------------------------------------------------------------- 1

void criterion1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const std::string& name : kOneState) {
    const auto g = load(name);
    const double val = matrix_game_value(payoff_matrix(*g, 0)).value;
    ValueEngine e(g);
    const BeliefMeasure u = BeliefMeasure::dirac({1.0});
    UniformOptions opt;
    opt.w.max_n = 8;
    const UniformValueReport r = uniform_value_estimate(e, u, 8, 8, opt);
    for (std::size_t m = 0; m <= 8; ++m)
      for (std::size_t n = 1; n <= 8; ++n) {
        const Bounds v = r.v[m][n - 1];
        const Bounds w = r.w[m][n - 1].bounds;
        worst = std::max({worst, std::abs(v.lower - val), std::abs(v.upper - val), std::abs(w.lower - val),
                          std::abs(w.upper - val)});
      }
    worst = std::max(worst, std::abs(r.estimate - val));
  }
  const double secs = since(t0);
  report(1, worst <= 1e-6 && secs < 5.0, fmt("max deviation %.2e over %zu specs, %.2f s", worst, kOneState.size(), secs));
}

// ---------------------------------------------------------------- 2

void criterion2() {
  const auto t0 = Clock::now();
  const auto g = std::make_shared<const AuxiliaryGame>(
      build_aumann_maschler({Matrix{{1, 0}, {0, 0}}, Matrix{{0, 0}, {0, 1}}}, {0.5, 0.5}));
  const Belief half{0.5, 0.5};
  ValueEngine fine(g, EngineConfig{1.0 / 64.0});
  const Bounds v1 = fine.v_n(1)->at(half);
  const bool one_shot = v1.lower <= 0.5 + 1e-9 && v1.upper >= 0.5 - 1e-9 && v1.gap() <= 0.02;

  ValueEngine e(g);
  bool monotone = true;
  std::string trail;
  Bounds prev = e.v_n(1)->at(half);
  trail += fmt("%.4f", prev.mid());
  for (std::size_t n = 2; n <= 8; ++n) {
    const Bounds b = e.v_n(n)->at(half);
    if (b.lower > prev.upper + 1e-9) monotone = false;
    trail += fmt(" %.4f", b.mid());
    prev = b;
  }

  const CavuOracle oracle = cavu_oracle(g->spec().aumann_maschler->matrices, 256);
  const double cav = oracle.value(half);
  const UniformValueReport r = uniform_value_estimate(e, BeliefMeasure::dirac(half), 8, 8, UniformOptions{false, {}});
  const Bounds br = r.bracket();
  const double miss = std::max({0.0, br.lower - (cav + oracle.error_bound()), cav - br.upper});
  const bool brackets = miss <= 0.05;
  const double secs = since(t0);
  report(2, one_shot && monotone && brackets && secs < 600.0,
         fmt("v1(1/2) in [%.4f, %.4f]; v_n(1/2) %s; cav u(1/2) = %.4f, bracket [%.4f, %.4f] misses by %.4f; %.1f s",
             v1.lower, v1.upper, trail.c_str(), cav, br.lower, br.upper, miss, secs));
}

// ---------------------------------------------------------------- 3

std::vector<double> random_row(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> E(1.0);
  std::vector<double> r(n);
  double s = 0.0;
  for (double& x : r) s += x = E(rng);
  for (double& x : r) x /= s;
  return r;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t I, std::size_t J) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  Matrix m(I, J);
  for (double& x : m.data) x = std::round(U(rng) * 100.0) / 100.0;
  return m;
}

RepeatedGameSpec random_instance(std::mt19937_64& rng, int kind) {
  const std::size_t I = 2 + rng() % 2, J = 2 + rng() % 2;
  const std::vector<Matrix> mats{random_matrix(rng, I, J), random_matrix(rng, I, J)};
  const std::vector<double> prior = random_row(rng, 2);
  std::vector<std::vector<double>> kernel;
  for (std::size_t r = 0; r < 2 * I; ++r) kernel.push_back(random_row(rng, 2));
  switch (kind % 4) {
    case 0:
      return build_aumann_maschler(mats, prior);
    case 1:
      return build_markov_chain_game(mats, kernel, prior);
    case 2:
      return build_single_controller(mats, kernel, prior, false);
    default:
      return build_single_controller(mats, kernel, prior, true);
  }
}

ThetaWeights random_theta(std::mt19937_64& rng) {
  const std::size_t support = 1 + rng() % 3;
  std::vector<std::size_t> stages{1, 2, 3, 4};
  std::shuffle(stages.begin(), stages.end(), rng);
  std::vector<double> w(4, 0.0);
  const std::vector<double> mass = random_row(rng, support);
  for (std::size_t s = 0; s < support; ++s) w[stages[s] - 1] = mass[s];
  return ThetaWeights(w);
}

void criterion3() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> U(0.02, 0.98);
  std::size_t pairs = 0, misses = 0, instances = 0;
  double worst = 0.0;
  auto check = [&](const AuxiliaryGame& g, const ValueGrid& grid, const ThetaWeights& th, const BeliefMeasure& u) {
    const Bounds ex = value_theta_exact(g, th, u);
    const Bounds gr = evaluate_measure(grid, u);
    const double sep = std::max(ex.lower - gr.upper, gr.lower - ex.upper);
    worst = std::max(worst, sep);
    if (sep > 1e-7) ++misses;
  };
  std::vector<std::shared_ptr<const AuxiliaryGame>> games;
  for (int x = 0; x < 24; ++x) games.push_back(std::make_shared<const AuxiliaryGame>(random_instance(rng, x)));
  for (const std::string& name : kCorpus)
    if (load(name)->K() == 2) games.push_back(load(name));
  for (const auto& g : games) {
    ++instances;
    ValueEngine e(g, EngineConfig{1.0 / 32.0});
    for (int t = 0; t < 3; ++t) {
      const ThetaWeights th = random_theta(rng);
      const auto grid = e.theta_grid(th);
      ++pairs;
      check(*g, *grid, th, initial_belief_measure(*g));
      for (int q = 0; q < 2; ++q) {
        const double x = U(rng);
        check(*g, *grid, th, BeliefMeasure::dirac({x, 1 - x}));
      }
    }
  }
  report(3, misses == 0 && instances >= 20,
         fmt("%zu instances, %zu (instance, theta) pairs, %zu disjoint intervals, worst separation %.2e, %.1f s",
             instances, pairs, misses, worst, since(t0)));
}

// ---------------------------------------------------------------- 4

void criterion4() {
  const auto t0 = Clock::now();
  std::size_t checks = 0, violations = 0;
  double worst = -1.0;
  for (const std::string& name : kCorpus) {
    const auto g = load(name);
    ValueEngine e(g);
    const BeliefMeasure u = initial_belief_measure(*g);
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t T = 1; T <= 3; ++T) {
        const double lhs = evaluate_measure(*e.v_n(n * T), u).lower;
        double rhs = 0.0;
        for (std::size_t t = 0; t < T; ++t) rhs += evaluate_measure(*e.v_mn(n * t, n), u).upper;
        rhs /= static_cast<double>(T);
        ++checks;
        worst = std::max(worst, lhs - rhs);
        if (lhs > rhs + 1e-9) ++violations;
      }
  }
  report(4, violations == 0,
         fmt("%zu checks on %zu specs, %zu violations, largest lhs - rhs %.3e, %.1f s", checks, kCorpus.size(),
             violations, worst, since(t0)));
}

// ---------------------------------------------------------------- 5

Belief random_point(std::mt19937_64& rng, std::size_t K) { return random_row(rng, K); }

BeliefMeasure random_measure(std::mt19937_64& rng, std::size_t K, std::size_t atoms) {
  const std::vector<double> w = random_row(rng, atoms);
  std::vector<Atom> a;
  for (std::size_t s = 0; s < atoms; ++s) a.push_back({random_point(rng, K), w[s]});
  return BeliefMeasure(a);
}

// Each atom split into up to three points with the same barycenter.
BeliefMeasure random_split(std::mt19937_64& rng, const BeliefMeasure& u) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Atom> out;
  for (const Atom& a : u.atoms()) {
    const std::size_t K = a.point.size();
    const std::size_t parts = 1 + rng() % 3;
    std::vector<Belief> pts;
    for (std::size_t s = 0; s + 1 < parts; ++s) pts.push_back(random_point(rng, K));
    // shrink towards the atom until the last point stays in the simplex
    const std::vector<double> lam = random_row(rng, parts);
    double scale = 1.0;
    for (int tries = 0; tries < 60; ++tries) {
      Belief last(K, 0.0);
      bool inside = true;
      for (std::size_t k = 0; k < K; ++k) {
        double acc = a.point[k];
        for (std::size_t s = 0; s + 1 < parts; ++s) acc -= lam[s] * (a.point[k] + scale * (pts[s][k] - a.point[k]));
        last[k] = acc / lam[parts - 1];
        if (last[k] < 0.0) inside = false;
      }
      if (inside) {
        for (std::size_t s = 0; s + 1 < parts; ++s) {
          Belief q(K);
          for (std::size_t k = 0; k < K; ++k) q[k] = a.point[k] + scale * (pts[s][k] - a.point[k]);
          out.push_back({q, a.weight * lam[s]});
        }
        out.push_back({last, a.weight * lam[parts - 1]});
        break;
      }
      scale *= 0.7;
      if (tries == 59) out.push_back(a);
    }
  }
  return BeliefMeasure(out);
}

std::function<double(const Belief&)> random_concave(std::mt19937_64& rng, std::size_t K) {
  std::normal_distribution<double> N(0.0, 1.0);
  const std::size_t planes = 1 + rng() % 4;
  std::vector<std::vector<double>> c(planes, std::vector<double>(K));
  for (auto& row : c)
    for (double& x : row) x = N(rng);
  const bool curved = rng() % 2 == 0;
  return [c, curved](const Belief& p) {
    double f = std::numeric_limits<double>::infinity();
    for (const auto& row : c) {
      double s = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) s += row[k] * p[k];
      f = std::min(f, s);
    }
    if (curved) {
      double sq = 0.0;
      for (double x : p) sq += x * x;
      f -= sq;
    }
    return f;
  };
}

void criterion5() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5);
  // Choquet order
  std::size_t dominated = 0, choquet_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t K = 2 + trial % 2;
    const BeliefMeasure u = random_measure(rng, K, 1 + rng() % 3);
    const BeliefMeasure v = trial % 3 == 2 ? random_measure(rng, K, 1 + rng() % 4) : random_split(rng, u);
    const ChoquetResult r = choquet_dominates(u, v);
    if (r.dominates) {
      ++dominated;
      for (int f = 0; f < 40; ++f) {
        const auto conc = random_concave(rng, K);
        if (u.integrate(conc) < v.integrate(conc) - 1e-9) ++choquet_bad;
      }
    } else {
      const ChoquetCertificate& c = r.certificate;
      const auto sep = [&](const Belief& p) { return c.separator(p); };
      if (!(u.integrate(sep) < v.integrate(sep))) ++choquet_bad;
    }
  }
  // Wasserstein
  std::size_t w_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t K = 2 + trial % 3;
    const Belief p = random_point(rng, K), q = random_point(rng, K);
    const double dpq = wasserstein(BeliefMeasure::dirac(p), BeliefMeasure::dirac(q)).value;
    if (std::abs(dpq - l1_distance(p, q)) > 1e-9) ++w_bad;
    const BeliefMeasure a = random_measure(rng, K, 1 + rng() % 4), b = random_measure(rng, K, 1 + rng() % 4),
                        c = random_measure(rng, K, 1 + rng() % 4);
    const double ab = wasserstein(a, b).value, ba = wasserstein(b, a).value, bc = wasserstein(b, c).value,
                 ac = wasserstein(a, c).value, aa = wasserstein(a, a).value;
    if (std::abs(ab - ba) > 1e-9 || ab < -1e-12 || std::abs(aa) > 1e-9 || ac > ab + bc + 1e-9) ++w_bad;
  }
  // disintegration of a mixture is dominated by the mixture of disintegrations
  std::size_t psi_bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t K = 2 + trial % 2, D = 2 + rng() % 3;
    std::vector<std::vector<double>> tables;
    for (int s = 0; s < 3; ++s) tables.push_back(random_row(rng, K * D));
    const std::vector<double> lam = random_row(rng, 3);
    std::vector<double> mixed(K * D, 0.0);
    std::vector<std::pair<double, BeliefMeasure>> parts;
    for (int s = 0; s < 3; ++s) {
      for (std::size_t e = 0; e < K * D; ++e) mixed[e] += lam[s] * tables[s][e];
      parts.push_back({lam[s], disintegrate(tables[s], K, D)});
    }
    if (!choquet_dominates(disintegrate(mixed, K, D), BeliefMeasure::mixture(parts)).dominates) ++psi_bad;
  }
  report(5, choquet_bad == 0 && w_bad == 0 && psi_bad == 0,
         fmt("Choquet: 500 pairs (%zu dominated), %zu disagreements; W1: 500 pairs, %zu failures; "
             "disintegration: 200 triples, %zu failures; %.1f s",
             dominated, choquet_bad, w_bad, psi_bad, since(t0)));
}

// ---------------------------------------------------------------- 6

StackedMixed random_stacked(std::mt19937_64& rng, std::size_t K, std::size_t I) {
  std::vector<double> d;
  for (std::size_t k = 0; k < K; ++k) {
    const std::vector<double> r = random_row(rng, I);
    d.insert(d.end(), r.begin(), r.end());
  }
  return StackedMixed(K, I, d);
}

void criterion6() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(6);
  std::vector<std::shared_ptr<const AuxiliaryGame>> games;
  for (const std::string& name : kCorpus)
    if (load(name)->K() >= 2) games.push_back(load(name));
  for (int x = 0; x < 8; ++x) games.push_back(std::make_shared<const AuxiliaryGame>(random_instance(rng, x)));
  double worst = 0.0;
  std::size_t not_dominating = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const AuxiliaryGame& g = *games[trial % games.size()];
    const std::size_t K = g.K();
    const BeliefMeasure comps_measure = random_split(rng, BeliefMeasure::dirac(random_point(rng, K)));
    const Belief p = barycenter(comps_measure);
    std::vector<SplitComponent> comps;
    std::vector<StackedMixed> acts;
    for (const Atom& a : comps_measure.atoms()) {
      comps.push_back({a.weight, a.point});
      acts.push_back(random_stacked(rng, K, g.I()));
    }
    const StackedMixed a = splitting_action(p, comps, acts);
    const std::vector<double> whole = transition_marginal(g, p, a);
    std::vector<double> mix(whole.size(), 0.0);
    std::vector<std::pair<double, BeliefMeasure>> parts;
    for (std::size_t s = 0; s < comps.size(); ++s) {
      const std::vector<double> q = transition_marginal(g, comps[s].point, acts[s]);
      for (std::size_t e = 0; e < q.size(); ++e) mix[e] += comps[s].lambda * q[e];
      parts.push_back({comps[s].lambda, belief_transition(g, comps[s].point, acts[s])});
    }
    for (std::size_t e = 0; e < mix.size(); ++e) worst = std::max(worst, std::abs(mix[e] - whole[e]));
    if (!choquet_dominates(belief_transition(g, p, a), BeliefMeasure::mixture(parts)).dominates) ++not_dominating;
  }
  report(6, worst <= 1e-12 && not_dominating == 0,
         fmt("200 draws over %zu games: max mixture error %.2e, %zu dominance failures, %.1f s", games.size(), worst,
             not_dominating, since(t0)));
}

// ---------------------------------------------------------------- 7

void criterion7() {
  const auto t0 = Clock::now();
  std::size_t bad = 0;
  std::string log;
  for (const std::string& name : kCorpus) {
    const auto g = load(name);
    ValueEngine e(g);
    const BeliefMeasure u = initial_belief_measure(*g);
    const UniformOptions opt{false, {}};
    const UniformValueReport r4 = uniform_value_estimate(e, u, 4, 4, opt);
    const UniformValueReport r8 = uniform_value_estimate(e, u, 8, 8, opt);
    if (r8.supinf.lower > r8.infsup.upper + r8.slack + 1e-9) ++bad;
    const double gap4 = r4.infsup.mid() - r4.supinf.mid(), gap8 = r8.infsup.mid() - r8.supinf.mid();
    std::printf("  gap trend %-18s M=N=4 %.4f  M=N=8 %.4f  (%s)\n", name.c_str(), gap4, gap8,
                gap8 <= gap4 + 1e-9 ? "shrinks" : "grows");
  }
  report(7, bad == 0, fmt("%zu specs at M=N=8, %zu with supinf above infsup + slack, %.1f s", kCorpus.size(), bad,
                          since(t0)));
}

// ---------------------------------------------------------------- 8

bool same_report(const GuaranteeReport& a, const GuaranteeReport& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t x = 0; x < a.cells.size(); ++x)
    if (a.cells[x].mean != b.cells[x].mean || a.cells[x].ci != b.cells[x].ci || a.cells[x].pass != b.cells[x].pass)
      return false;
  return true;
}

void criterion8() {
  const auto t0 = Clock::now();
  const std::size_t N = 512, n2 = 8;
  PlayoutConfig pc;
  pc.replications = 200;
  pc.seed = 7;
  bool ok = true;
  std::string detail;
  for (const std::string& name : {std::string("am_quadratic"), std::string("mc_switch"), std::string("single_controller")}) {
    const auto g = load(name);
    const auto spec = g->spec_ptr();
    ValueEngine e(g);
    const BeliefMeasure u = initial_belief_measure(*g);
    const double v = evaluate_measure(*e.v_n(N), u).lower;
    const auto sigma = extract_p1_markov(e, N);
    const auto r1 = guarantee_check_p1(*g, *sigma, v, 0.05, {N}, adversaries_for_p1(spec), pc);
    const auto r1b = guarantee_check_p1(*g, *sigma, v, 0.05, {N}, adversaries_for_p1(spec), pc);
    double sup = 0.0;
    for (std::size_t m = 0; m <= 8; ++m) sup = std::max(sup, evaluate_measure(*e.v_mn(m, n2), u).upper);
    const auto tau = build_p2_cyclic(e, n2);
    const auto r2 = guarantee_check_p2(*g, *tau, sup, 0.05, {N}, adversaries_for_p2(spec), pc);
    const auto r2b = guarantee_check_p2(*g, *tau, sup, 0.05, {N}, adversaries_for_p2(spec), pc);
    const bool stable = same_report(r1, r1b) && same_report(r2, r2b);
    double worst1 = 1.0, worst2 = 0.0;
    for (const auto& c : r1.cells) worst1 = std::min(worst1, c.mean);
    for (const auto& c : r2.cells) worst2 = std::max(worst2, c.mean);
    ok = ok && r1.passed() && r2.passed() && stable;
    detail += fmt("%s: p1 %s (v %.4f, worst mean %.4f), p2 %s (v %.4f, worst mean %.4f)%s; ", name.c_str(),
                  r1.passed() ? "ok" : "FAILED", v, worst1, r2.passed() ? "ok" : "FAILED", sup, worst2,
                  stable ? "" : " NOT seed-stable");
  }
  // negative control: uniform play against a game with a dominant row
  const auto g = load("k1_dominant");
  ValueEngine e(g);
  const double v = evaluate_measure(*e.v_n(N), initial_belief_measure(*g)).lower;
  const ConstantStrategy1 uniform(StackedMixed::uniform(g->K(), g->I()), "uniform");
  const auto neg = guarantee_check_p1(*g, uniform, v, 0.05, {N}, adversaries_for_p1(g->spec_ptr()), pc);
  ok = ok && !neg.passed();
  detail += fmt("negative control %s; %.1f s", neg.passed() ? "PASSED (unexpected)" : "fails as expected", since(t0));
  report(8, ok, detail);
}

// ---------------------------------------------------------------- 9

// Long-run average value of the known-state game by enumeration of player 1's
// stationary policies; player 2 does not move the state, so he best responds
// state by state.
double single_controller_oracle(const RepeatedGameSpec& s, bool& revealing) {
  const std::size_t K = s.K(), I = s.I(), J = s.J();
  // P(k' | k, i), taken at j = 0
  std::vector<double> P(K * I * K, 0.0);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < I; ++i) {
      const double* q = s.q(k, i, 0);
      for (std::size_t k2 = 0; k2 < K; ++k2)
        for (std::size_t c = 0; c < s.C(); ++c)
          for (std::size_t d = 0; d < s.D(); ++d) P[(k * I + i) * K + k2] += q[s.outcome(k2, c, d)];
    }
  // every public signal names the state
  revealing = true;
  for (std::size_t r = 0; r < K * I * J; ++r)
    for (std::size_t d = 0; d < s.D(); ++d) {
      int owners = 0;
      for (std::size_t k2 = 0; k2 < K; ++k2) {
        double m = 0.0;
        for (std::size_t c = 0; c < s.C(); ++c) m += s.transition[r * s.outcomes() + s.outcome(k2, c, d)];
        if (m > 0.0) ++owners;
      }
      if (owners > 1) revealing = false;
    }
  if (K != 2 || I != 2) return std::nan("");
  auto score = [&](double x0, double x1) {
    const double x[2] = {x0, x1};
    double T[2][2];
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t k2 = 0; k2 < 2; ++k2)
        T[k][k2] = x[k] * P[(k * I + 0) * K + k2] + (1 - x[k]) * P[(k * I + 1) * K + k2];
    const double a = T[0][1], b = T[1][0];
    const double mu0 = a + b > 0 ? b / (a + b) : 0.5;
    double total = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
      double worst = 1e300;
      for (std::size_t j = 0; j < J; ++j) worst = std::min(worst, x[k] * s.g(k, 0, j) + (1 - x[k]) * s.g(k, 1, j));
      total += (k == 0 ? mu0 : 1 - mu0) * worst;
    }
    return total;
  };
  double best = -1.0, bx = 0.0, by = 0.0;
  const int G = 400;
  for (int a = 0; a <= G; ++a)
    for (int b = 0; b <= G; ++b) {
      const double v = score(a / double(G), b / double(G));
      if (v > best) {
        best = v;
        bx = a / double(G);
        by = b / double(G);
      }
    }
  for (double h = 1.0 / G; h > 1e-9; h *= 0.5)
    for (int da = -2; da <= 2; ++da)
      for (int db = -2; db <= 2; ++db) {
        const double x = std::clamp(bx + da * h, 0.0, 1.0), y = std::clamp(by + db * h, 0.0, 1.0);
        const double v = score(x, y);
        if (v > best) {
          best = v;
          bx = x;
          by = y;
        }
      }
  return best;
}

void criterion9() {
  const auto t0 = Clock::now();
  const auto g = load("single_controller");
  bool revealing = false;
  const double oracle = single_controller_oracle(g->spec(), revealing);
  ValueEngine e(g);
  const UniformValueReport r = uniform_value_estimate(e, initial_belief_measure(*g), 8, 8, UniformOptions{false, {}});
  const double diff = std::abs(r.estimate - oracle);
  report(9, revealing && diff <= 0.03,
         fmt("uniform estimate %.4f, stationary-policy oracle %.4f, difference %.4f%s, %.1f s", r.estimate, oracle,
             diff, revealing ? "" : " (instance is not fully revealing)", since(t0)));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                               criterion6, criterion7, criterion8, criterion9};
  for (std::size_t c = 0; c < all.size(); ++c) {
    try {
      all[c]();
    } catch (const std::exception& ex) {
      report(static_cast<int>(c + 1), false, std::string("error: ") + ex.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
