#include "rgs/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "rgs/error.hpp"
#include "rgs/tolerances.hpp"

namespace rgs {

namespace {

std::string triple(const RepeatedGameSpec& s, std::size_t k, std::size_t i, std::size_t j) {
  return s.states[k] + "|" + s.actions1[i] + "|" + s.actions2[j];
}

void check_distribution(const double* p, std::size_t n, const std::string& name) {
  double sum = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    if (!std::isfinite(p[x]) || p[x] < 0.0)
      throw ValidationError(name + ": entry " + std::to_string(x) + " is negative or not finite");
    sum += p[x];
  }
  if (std::fabs(sum - 1.0) > kTol.table) {
    std::ostringstream os;
    os << name << ": probabilities sum to " << sum;
    throw ValidationError(os.str());
  }
}

}  // namespace

void RepeatedGameSpec::validate() const {
  const char* names[] = {"states", "actions1", "actions2", "signals1", "signals2"};
  const std::vector<std::string>* sets[] = {&states, &actions1, &actions2, &signals1, &signals2};
  for (int s = 0; s < 5; ++s) {
    if (sets[s]->empty()) throw ValidationError(std::string(names[s]) + ": empty label set");
    std::vector<std::string> sorted = *sets[s];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError(std::string(names[s]) + ": duplicate label");
  }
  if (initial.size() != outcomes()) throw ValidationError("initial: wrong table size");
  if (payoff.size() != K() * I() * J()) throw ValidationError("payoff: wrong table size");
  if (transition.size() != K() * I() * J() * outcomes()) throw ValidationError("transition: wrong table size");
  if (!(scale.scale > 0.0) || !std::isfinite(scale.offset)) throw ValidationError("payoff_scale: invalid");
  check_distribution(initial.data(), outcomes(), "initial");
  for (std::size_t k = 0; k < K(); ++k)
    for (std::size_t i = 0; i < I(); ++i)
      for (std::size_t j = 0; j < J(); ++j) {
        const double v = g(k, i, j);
        if (!std::isfinite(v) || v < -kTol.structural || v > 1.0 + kTol.structural)
          throw ValidationError("payoff " + triple(*this, k, i, j) + ": value outside [0,1]");
        check_distribution(q(k, i, j), outcomes(), "transition " + triple(*this, k, i, j));
      }
}

HypothesisReport validate_ha_prime(const RepeatedGameSpec& spec) {
  spec.validate();
  const std::size_t K = spec.K(), C = spec.C(), D = spec.D();
  // mass[c][(k,d)] accumulated over every source table
  std::vector<std::map<std::pair<std::size_t, std::size_t>, double>> mass(C);
  std::vector<const double*> sources{spec.initial.data()};
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < spec.I(); ++i)
      for (std::size_t j = 0; j < spec.J(); ++j) sources.push_back(spec.q(k, i, j));
  for (const double* src : sources)
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t c = 0; c < C; ++c)
        for (std::size_t d = 0; d < D; ++d) {
          const double m = src[spec.outcome(k, c, d)];
          if (m > 0.0) mass[c][{k, d}] += m;
        }

  HypothesisReport r;
  r.hypothesis = "HA'";
  r.k_hat.assign(C, -1);
  r.d_hat.assign(C, -1);
  for (std::size_t c = 0; c < C; ++c) {
    if (mass[c].empty()) {
      r.unreachable_signals.push_back(c);
      continue;
    }
    auto best = mass[c].begin();
    for (auto it = mass[c].begin(); it != mass[c].end(); ++it)
      if (it->second > best->second) best = it;
    r.k_hat[c] = static_cast<long>(best->first.first);
    r.d_hat[c] = static_cast<long>(best->first.second);
  }
  std::size_t worst_c = 0;
  for (const double* src : sources) {
    double off = 0.0;
    std::size_t at_c = 0;
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t c = 0; c < C; ++c)
        for (std::size_t d = 0; d < D; ++d) {
          const double m = src[spec.outcome(k, c, d)];
          if (m > 0.0 && (r.k_hat[c] != static_cast<long>(k) || r.d_hat[c] != static_cast<long>(d))) {
            off += m;
            at_c = c;
          }
        }
    if (off > r.max_violation) {
      r.max_violation = off;
      worst_c = at_c;
    }
  }
  r.holds = r.max_violation <= kTol.structural;
  if (!r.holds) r.detail = "signal " + spec.signals1[worst_c] + " is compatible with several (state, public signal) pairs";
  return r;
}

namespace {

std::vector<double> kd_marginal(const RepeatedGameSpec& spec, const double* law) {
  std::vector<double> m(spec.K() * spec.D(), 0.0);
  for (std::size_t k = 0; k < spec.K(); ++k)
    for (std::size_t c = 0; c < spec.C(); ++c)
      for (std::size_t d = 0; d < spec.D(); ++d) m[k * spec.D() + d] += law[spec.outcome(k, c, d)];
  return m;
}

}  // namespace

HypothesisReport validate_hb_prime(const RepeatedGameSpec& spec) {
  spec.validate();
  HypothesisReport r;
  r.hypothesis = "HB'";
  const std::size_t KD = spec.K() * spec.D();
  r.qbar.assign(spec.K() * spec.I() * KD, 0.0);
  for (std::size_t k = 0; k < spec.K(); ++k)
    for (std::size_t i = 0; i < spec.I(); ++i) {
      const std::vector<double> m0 = kd_marginal(spec, spec.q(k, i, 0));
      std::copy(m0.begin(), m0.end(), r.qbar.begin() + static_cast<long>((k * spec.I() + i) * KD));
      for (std::size_t j = 1; j < spec.J(); ++j) {
        const std::vector<double> mj = kd_marginal(spec, spec.q(k, i, j));
        const double dev = l1_distance(m0, mj);
        if (dev > r.max_violation) {
          r.max_violation = dev;
          r.offending = HypothesisReport::Offending{k, i, 0, j, m0, mj};
        }
      }
    }
  r.holds = r.max_violation <= kTol.structural;
  if (r.holds) {
    r.offending.reset();
  } else {
    r.qbar.clear();
    const auto& o = *r.offending;
    r.detail = "marginal on states x public signals differs between " + triple(spec, o.k, o.i, o.j) + " and " +
               triple(spec, o.k, o.i, o.j2);
  }
  return r;
}

HypothesisReport validate_ha(const RepeatedGameSpec& spec) {
  HypothesisReport r = validate_ha_prime(spec);
  r.hypothesis = "HA";
  // c must also pin down the previous action of player 2
  std::vector<long> j_of_c(spec.C(), -1);
  double ambiguous = 0.0;
  for (std::size_t k = 0; k < spec.K(); ++k)
    for (std::size_t i = 0; i < spec.I(); ++i)
      for (std::size_t j = 0; j < spec.J(); ++j) {
        const double* law = spec.q(k, i, j);
        for (std::size_t k2 = 0; k2 < spec.K(); ++k2)
          for (std::size_t c = 0; c < spec.C(); ++c)
            for (std::size_t d = 0; d < spec.D(); ++d) {
              const double m = law[spec.outcome(k2, c, d)];
              if (m <= 0.0) continue;
              if (j_of_c[c] < 0) j_of_c[c] = static_cast<long>(j);
              else if (j_of_c[c] != static_cast<long>(j)) ambiguous = std::max(ambiguous, m);
            }
      }
  r.max_violation = std::max(r.max_violation, ambiguous);
  r.holds = r.max_violation <= kTol.structural;
  if (!r.holds && r.detail.empty()) r.detail = "signals of player 1 do not reveal the action of player 2";
  return r;
}

HypothesisReport validate_hb(const RepeatedGameSpec& spec) {
  spec.validate();
  HypothesisReport r;
  r.hypothesis = "HB";
  for (std::size_t k = 0; k < spec.K(); ++k)
    for (std::size_t i = 0; i < spec.I(); ++i)
      for (std::size_t j = 1; j < spec.J(); ++j) {
        const double dev = l1_distance(std::span(spec.q(k, i, 0), spec.outcomes()),
                                       std::span(spec.q(k, i, j), spec.outcomes()));
        if (dev > r.max_violation) {
          r.max_violation = dev;
          r.offending = HypothesisReport::Offending{k, i, 0, j, {}, {}};
        }
      }
  r.holds = r.max_violation <= kTol.structural;
  if (r.holds) r.offending.reset();
  return r;
}

std::size_t canonical_signal(const RepeatedGameSpec& spec, std::size_t k, std::size_t d) {
  const HypothesisReport r = validate_ha_prime(spec);
  if (!r.holds) throw HypothesisError("canonical_signal: HA' does not hold");
  for (std::size_t c = 0; c < spec.C(); ++c)
    if (r.k_hat[c] == static_cast<long>(k) && r.d_hat[c] == static_cast<long>(d)) return c;
  throw Error("canonical_signal: no signal of player 1 is compatible with state " + spec.states.at(k) +
              " and public signal " + spec.signals2.at(d));
}

double stage_payoff(const RepeatedGameSpec& spec, const Belief& p, const StackedMixed& a, const Mixed& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < spec.K(); ++k) {
    if (p[k] == 0.0) continue;
    double sk = 0.0;
    for (std::size_t i = 0; i < spec.I(); ++i) {
      if (a(k, i) == 0.0) continue;
      double si = 0.0;
      for (std::size_t j = 0; j < spec.J(); ++j) si += b[j] * spec.g(k, i, j);
      sk += a(k, i) * si;
    }
    s += p[k] * sk;
  }
  return s;
}

AuxiliaryGame::AuxiliaryGame(std::shared_ptr<const RepeatedGameSpec> spec) : spec_(std::move(spec)) { init(); }

AuxiliaryGame::AuxiliaryGame(const RepeatedGameSpec& spec)
    : spec_(std::make_shared<const RepeatedGameSpec>(spec)) {
  init();
}

void AuxiliaryGame::init() {
  const HypothesisReport ha = validate_ha_prime(*spec_);
  if (!ha.holds) throw HypothesisError("HA' does not hold: " + ha.detail);
  const HypothesisReport hb = validate_hb_prime(*spec_);
  if (!hb.holds) throw HypothesisError("HB' does not hold: " + hb.detail);
  qbar_ = hb.qbar;
  k_hat_ = ha.k_hat;
  d_hat_ = ha.d_hat;
}

std::vector<double> transition_marginal(const AuxiliaryGame& game, const Belief& p, const StackedMixed& a) {
  const std::size_t KD = game.K() * game.D();
  std::vector<double> out(KD, 0.0);
  for (std::size_t k = 0; k < game.K(); ++k) {
    if (p[k] == 0.0) continue;
    for (std::size_t i = 0; i < game.I(); ++i) {
      const double w = p[k] * a(k, i);
      if (w == 0.0) continue;
      const double* q = game.qbar(k, i);
      for (std::size_t x = 0; x < KD; ++x) out[x] += w * q[x];
    }
  }
  return out;
}

BeliefMeasure belief_transition(const AuxiliaryGame& game, const Belief& p, const StackedMixed& a) {
  return disintegrate(transition_marginal(game, p, a), game.K(), game.D());
}

std::vector<double> initial_marginal(const RepeatedGameSpec& spec) {
  return kd_marginal(spec, spec.initial.data());
}

BeliefMeasure initial_belief_measure(const AuxiliaryGame& game) {
  return disintegrate(initial_marginal(game.spec()), game.K(), game.D());
}

namespace {

PayoffScale choose_scale(const std::vector<Matrix>& ms) {
  double lo = INFINITY, hi = -INFINITY;
  for (const Matrix& m : ms)
    for (double x : m.data) {
      if (!std::isfinite(x)) fail_precondition("builder: payoff not finite");
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  if (lo >= 0.0 && hi <= 1.0) return {};
  if (hi == lo) return {lo, 1.0};
  return {lo, hi - lo};
}

RepeatedGameSpec build_controlled(const std::vector<Matrix>& matrices, const std::vector<std::vector<double>>& kernel,
                                  const Belief& p, bool reveal_state) {
  if (matrices.empty()) fail_precondition("builder: no payoff matrices");
  const std::size_t K = matrices.size(), I = matrices[0].rows, J = matrices[0].cols;
  if (I == 0 || J == 0) fail_precondition("builder: empty payoff matrix");
  for (const Matrix& m : matrices)
    if (m.rows != I || m.cols != J) fail_precondition("builder: payoff matrices differ in shape");
  if (p.size() != K) fail_precondition("builder: prior has wrong dimension");
  if (simplex_violation(p) > kTol.table) throw ValidationError("builder: prior is not a probability vector");
  if (kernel.size() != K * I) fail_precondition("builder: kernel must have one row per (state, action)");
  for (std::size_t r = 0; r < kernel.size(); ++r) {
    if (kernel[r].size() != K || simplex_violation(kernel[r]) > kTol.table)
      throw ValidationError("builder: kernel row " + std::to_string(r) + " is not stochastic");
  }

  RepeatedGameSpec s;
  s.scale = choose_scale(matrices);
  for (std::size_t k = 0; k < K; ++k) s.states.push_back("k" + std::to_string(k));
  for (std::size_t i = 0; i < I; ++i) s.actions1.push_back("i" + std::to_string(i));
  for (std::size_t j = 0; j < J; ++j) s.actions2.push_back("j" + std::to_string(j));

  // player 1: start signal per state, then (new state, i, j)
  for (std::size_t k = 0; k < K; ++k) s.signals1.push_back(s.states[k] + "|start");
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < I; ++i)
      for (std::size_t j = 0; j < J; ++j) s.signals1.push_back(s.states[k] + "|" + s.actions1[i] + "|" + s.actions2[j]);
  auto c_start = [](std::size_t k) { return k; };
  auto c_of = [&](std::size_t k, std::size_t i, std::size_t j) { return K + (k * I + i) * J + j; };

  // player 2: start signal (state-revealing or not), then i (with the new state when revealed)
  std::size_t nstart = reveal_state ? K : 1;
  if (reveal_state) {
    for (std::size_t k = 0; k < K; ++k) s.signals2.push_back("start|" + s.states[k]);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t i = 0; i < I; ++i) s.signals2.push_back(s.states[k] + "|" + s.actions1[i]);
  } else {
    s.signals2.push_back("start");
    for (std::size_t i = 0; i < I; ++i) s.signals2.push_back(s.actions1[i]);
  }
  auto d_start = [&](std::size_t k) { return reveal_state ? k : 0; };
  auto d_of = [&](std::size_t k, std::size_t i) { return reveal_state ? nstart + k * I + i : nstart + i; };

  s.initial.assign(s.outcomes(), 0.0);
  for (std::size_t k = 0; k < K; ++k) s.initial[s.outcome(k, c_start(k), d_start(k))] = p[k];

  s.payoff.resize(K * I * J);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < I; ++i)
      for (std::size_t j = 0; j < J; ++j) {
        double v = s.scale.to_unit(matrices[k](i, j));
        s.payoff[(k * I + i) * J + j] = std::clamp(v, 0.0, 1.0);
      }

  s.transition.assign(K * I * J * s.outcomes(), 0.0);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < I; ++i)
      for (std::size_t j = 0; j < J; ++j) {
        double* law = s.transition.data() + ((k * I + i) * J + j) * s.outcomes();
        for (std::size_t k2 = 0; k2 < K; ++k2) {
          const double w = kernel[k * I + i][k2];
          if (w > 0.0) law[s.outcome(k2, c_of(k2, i, j), d_of(k2, i))] += w;
        }
      }
  s.validate();
  return s;
}

std::vector<std::vector<double>> absorbing_kernel(std::size_t K, std::size_t I) {
  std::vector<std::vector<double>> l(K * I, std::vector<double>(K, 0.0));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < I; ++i) l[k * I + i][k] = 1.0;
  return l;
}

}  // namespace

RepeatedGameSpec build_aumann_maschler(const std::vector<Matrix>& matrices, const Belief& p) {
  if (matrices.empty() || matrices[0].rows == 0) fail_precondition("builder: empty payoff matrices");
  RepeatedGameSpec s = build_controlled(matrices, absorbing_kernel(matrices.size(), matrices[0].rows), p, false);
  AumannMaschlerData am;
  for (std::size_t k = 0; k < s.K(); ++k) {
    Matrix m(s.I(), s.J());
    for (std::size_t i = 0; i < s.I(); ++i)
      for (std::size_t j = 0; j < s.J(); ++j) m(i, j) = s.g(k, i, j);
    am.matrices.push_back(std::move(m));
  }
  am.prior = p;
  s.aumann_maschler = std::move(am);
  return s;
}

RepeatedGameSpec build_markov_chain_game(const std::vector<Matrix>& matrices,
                                         const std::vector<std::vector<double>>& kernel, const Belief& p) {
  return build_controlled(matrices, kernel, p, false);
}

RepeatedGameSpec build_single_controller(const std::vector<Matrix>& matrices,
                                         const std::vector<std::vector<double>>& kernel, const Belief& p,
                                         bool reveal_state) {
  return build_controlled(matrices, kernel, p, reveal_state);
}

std::optional<AumannMaschlerData> detect_aumann_maschler(const RepeatedGameSpec& spec) {
  if (spec.aumann_maschler) return spec.aumann_maschler;
  if (!validate_ha_prime(spec).holds) return std::nullopt;
  const HypothesisReport hb = validate_hb_prime(spec);
  if (!hb.holds) return std::nullopt;
  const std::size_t K = spec.K(), I = spec.I(), D = spec.D();
  // state constant, public signal a fixed injective function of i
  std::vector<long> d_of_i(I, -1);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < I; ++i) {
      const double* q = hb.qbar.data() + (k * I + i) * K * D;
      for (std::size_t k2 = 0; k2 < K; ++k2)
        for (std::size_t d = 0; d < D; ++d) {
          const double m = q[k2 * D + d];
          if (m <= kTol.structural) continue;
          if (k2 != k || m < 1.0 - kTol.structural) return std::nullopt;
          if (d_of_i[i] < 0) d_of_i[i] = static_cast<long>(d);
          else if (d_of_i[i] != static_cast<long>(d)) return std::nullopt;
        }
    }
  for (std::size_t i = 0; i < I; ++i)
    for (std::size_t i2 = i + 1; i2 < I; ++i2)
      if (d_of_i[i] == d_of_i[i2]) return std::nullopt;
  const BeliefMeasure init = disintegrate(initial_marginal(spec), K, D);
  if (init.size() != 1) return std::nullopt;
  AumannMaschlerData am;
  am.prior = init.atoms()[0].point;
  for (std::size_t k = 0; k < K; ++k) {
    Matrix m(I, spec.J());
    for (std::size_t i = 0; i < I; ++i)
      for (std::size_t j = 0; j < spec.J(); ++j) m(i, j) = spec.g(k, i, j);
    am.matrices.push_back(std::move(m));
  }
  return am;
}

}  // namespace rgs
