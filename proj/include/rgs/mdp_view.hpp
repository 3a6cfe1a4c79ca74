#pragma once

#include <cstddef>
#include <vector>

#include "rgs/game_model.hpp"
#include "rgs/measures.hpp"
#include "rgs/strategies.hpp"

namespace rgs {

// State z_t = (u_{t+1}, y_t) of the deterministic problem on measures.
struct PlayStep {
  BeliefMeasure next;
  double payoff = 0.0;
};

struct MarkovPlay {
  BeliefMeasure start;
  std::vector<PlayStep> steps;
};

// One decision rule f: supp(u) -> stacked actions, listed atom by atom.
using AtomRule = std::vector<std::pair<Belief, StackedMixed>>;

// G(u, f) = sum_p u(p) min_j g(p, f(p), e_j)
double mdp_reward(const AuxiliaryGame& game, const BeliefMeasure& u, const AtomRule& f);
// H(u, f) = sum_p u(p) l(p, f(p))
BeliefMeasure mdp_transition(const AuxiliaryGame& game, const BeliefMeasure& u, const AtomRule& f);

MarkovPlay play_of_markov_strategy(const AuxiliaryGame& game, const BeliefMeasure& u, const Player1Strategy& sigma,
                                   std::size_t stages);

struct RecoverOptions {
  std::size_t max_assignments = 1u << 16;  // posterior-to-atom matchings tried per stage
  double tolerance = 1e-8;
};

// Per-stage rules f_t with H(u_t, f_t) = u_{t+1} and G(u_t, f_t) = y_t. Throws
// Error naming the first stage that no rule realizes.
std::vector<AtomRule> markov_strategy_of_play(const AuxiliaryGame& game, const MarkovPlay& play,
                                              const RecoverOptions& options = {});

// Wraps recovered rules as a table strategy.
std::shared_ptr<MarkovStrategy1> strategy_from_rules(const std::vector<AtomRule>& rules);

}  // namespace rgs
