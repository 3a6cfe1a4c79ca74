#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rgs/measures.hpp"
#include "rgs/types.hpp"
#include "rgs/zerosum.hpp"

namespace rgs {

// g_original = offset + scale * g
struct PayoffScale {
  double offset = 0.0;
  double scale = 1.0;

  double to_original(double g) const { return offset + scale * g; }
  double to_unit(double x) const { return (x - offset) / scale; }
};

// Kept alongside specs produced by the Aumann-Maschler builder; the oracle needs
// the matrices in unit scale.
struct AumannMaschlerData {
  std::vector<Matrix> matrices;  // unit-scale payoff matrices, one per state
  Belief prior;
};

struct RepeatedGameSpec {
  std::vector<std::string> states, actions1, actions2, signals1, signals2;
  std::vector<double> initial;     // (k, c, d)
  std::vector<double> payoff;      // (k, i, j)
  std::vector<double> transition;  // (k, i, j) x (k', c, d)
  PayoffScale scale;
  std::optional<AumannMaschlerData> aumann_maschler;

  std::size_t K() const { return states.size(); }
  std::size_t I() const { return actions1.size(); }
  std::size_t J() const { return actions2.size(); }
  std::size_t C() const { return signals1.size(); }
  std::size_t D() const { return signals2.size(); }
  std::size_t outcomes() const { return K() * C() * D(); }

  double g(std::size_t k, std::size_t i, std::size_t j) const { return payoff[(k * I() + i) * J() + j]; }
  double pi(std::size_t k, std::size_t c, std::size_t d) const { return initial[(k * C() + c) * D() + d]; }
  const double* q(std::size_t k, std::size_t i, std::size_t j) const {
    return transition.data() + ((k * I() + i) * J() + j) * outcomes();
  }
  std::size_t outcome(std::size_t k, std::size_t c, std::size_t d) const { return (k * C() + c) * D() + d; }

  // Throws ValidationError naming the offending table.
  void validate() const;
};

struct HypothesisReport {
  std::string hypothesis;
  bool holds = false;
  double max_violation = 0.0;
  // HA': per signal c, the compatible state / public signal, -1 if unreachable.
  std::vector<long> k_hat, d_hat;
  std::vector<std::size_t> unreachable_signals;
  // HB': common marginal (k, i) x (k', d) when it holds.
  std::vector<double> qbar;
  struct Offending {
    std::size_t k = 0, i = 0, j = 0, j2 = 0;
    std::vector<double> marginal_j, marginal_j2;
  };
  std::optional<Offending> offending;
  std::string detail;
};

HypothesisReport validate_ha_prime(const RepeatedGameSpec& spec);
HypothesisReport validate_hb_prime(const RepeatedGameSpec& spec);
// Informational only: HA (player 1 also learns player 2's signal and action),
// HB (the whole transition does not depend on j).
HypothesisReport validate_ha(const RepeatedGameSpec& spec);
HypothesisReport validate_hb(const RepeatedGameSpec& spec);

std::size_t canonical_signal(const RepeatedGameSpec& spec, std::size_t k, std::size_t d);

double stage_payoff(const RepeatedGameSpec& spec, const Belief& p, const StackedMixed& a, const Mixed& b);

// The belief game built from a spec that satisfies HA' and HB'. Construction
// throws HypothesisError otherwise.
class AuxiliaryGame {
 public:
  explicit AuxiliaryGame(std::shared_ptr<const RepeatedGameSpec> spec);
  explicit AuxiliaryGame(const RepeatedGameSpec& spec);

  const RepeatedGameSpec& spec() const { return *spec_; }
  std::shared_ptr<const RepeatedGameSpec> spec_ptr() const { return spec_; }
  std::size_t K() const { return spec_->K(); }
  std::size_t I() const { return spec_->I(); }
  std::size_t J() const { return spec_->J(); }
  std::size_t D() const { return spec_->D(); }

  double g(std::size_t k, std::size_t i, std::size_t j) const { return spec_->g(k, i, j); }
  // q-bar(k, i) over (k', d), row-major.
  const double* qbar(std::size_t k, std::size_t i) const { return qbar_.data() + (k * I() + i) * K() * D(); }
  const std::vector<long>& k_hat() const { return k_hat_; }
  const std::vector<long>& d_hat() const { return d_hat_; }

 private:
  std::shared_ptr<const RepeatedGameSpec> spec_;
  std::vector<double> qbar_;
  std::vector<long> k_hat_, d_hat_;

  void init();
};

// Q-bar(p, a) over (k', d).
std::vector<double> transition_marginal(const AuxiliaryGame& game, const Belief& p, const StackedMixed& a);
BeliefMeasure belief_transition(const AuxiliaryGame& game, const Belief& p, const StackedMixed& a);
BeliefMeasure initial_belief_measure(const AuxiliaryGame& game);
// K x D marginal of the initial law.
std::vector<double> initial_marginal(const RepeatedGameSpec& spec);

// Builders. Matrices are in original units; when some entry leaves [0,1] all
// payoffs are mapped affinely onto [0,1] and the map is recorded in spec.scale.
RepeatedGameSpec build_aumann_maschler(const std::vector<Matrix>& matrices, const Belief& p);

// kernel[k * I + i] is the law of the next state given (k, i).
RepeatedGameSpec build_markov_chain_game(const std::vector<Matrix>& matrices,
                                         const std::vector<std::vector<double>>& kernel, const Belief& p);

// reveal_state: player 2 observes the new state each stage (and the initial one).
RepeatedGameSpec build_single_controller(const std::vector<Matrix>& matrices,
                                         const std::vector<std::vector<double>>& kernel, const Belief& p,
                                         bool reveal_state);

// Recognizes the Aumann-Maschler subclass (constant state, HA', HB') and returns
// the unit-scale matrices. Prefers stored builder data.
std::optional<AumannMaschlerData> detect_aumann_maschler(const RepeatedGameSpec& spec);

}  // namespace rgs
