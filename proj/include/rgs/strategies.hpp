#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rgs/game_model.hpp"
#include "rgs/value_grid.hpp"

namespace rgs {

// Player 1 declares a stacked action per stage as a function of the public
// belief. `opponent` is player 2's mixed action of the same stage and is only
// supplied when needs_opponent() is true.
class Player1Strategy {
 public:
  virtual ~Player1Strategy() = default;
  virtual StackedMixed action(std::size_t stage, const Belief& p, const Mixed* opponent) const = 0;
  virtual bool needs_opponent() const { return false; }
  virtual std::string name() const = 0;
};

class Player2Strategy {
 public:
  virtual ~Player2Strategy() = default;
  virtual Mixed action(std::size_t stage, const Belief& p, const StackedMixed* opponent) const = 0;
  virtual bool needs_opponent() const { return false; }
  virtual std::string name() const = 0;
};

// A per-stage map from beliefs to actions: either values on a simplex lattice
// (nearest lattice point) or an explicit table (nearest entry in l1).
template <class Action>
struct BeliefRule {
  std::shared_ptr<const SimplexLattice> lattice;
  std::vector<Action> lattice_actions;
  std::vector<std::pair<Belief, Action>> table;

  const Action& lookup(const Belief& p) const;
};

using Player1Rule = BeliefRule<StackedMixed>;
using Player2Rule = BeliefRule<Mixed>;

class MarkovStrategy1 final : public Player1Strategy {
 public:
  // Rules for stages 1..L. Later stages restart the list cyclically.
  explicit MarkovStrategy1(std::vector<Player1Rule> rules, std::string label = "markov");
  // Exact mode: at stage s solve the stage program at the current belief
  // against the stored continuation instead of reading the nearest lattice point.
  MarkovStrategy1(std::shared_ptr<const AuxiliaryGame> game, std::vector<std::shared_ptr<const ValueGrid>> chain,
                  bool exact, std::string label = "markov");

  StackedMixed action(std::size_t stage, const Belief& p, const Mixed* opponent) const override;
  std::string name() const override { return label_; }
  std::size_t period() const { return rules_.size(); }
  const std::vector<Player1Rule>& rules() const { return rules_; }
  bool exact() const { return exact_; }

 private:
  std::vector<Player1Rule> rules_;
  std::string label_;
  bool exact_ = false;
  std::shared_ptr<const AuxiliaryGame> game_;
  std::vector<std::shared_ptr<const ValueGrid>> chain_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::size_t, std::vector<std::int64_t>>, StackedMixed> memo_;
};

enum class BlockSchedule { Cyclic, Growing };

class BlockStrategy2 final : public Player2Strategy {
 public:
  // by_length[L] holds the rules of a block of length L (stages 1..L of the block).
  // Cyclic uses one length; growing uses block m of length m, and past the
  // largest available length keeps repeating that length.
  BlockStrategy2(BlockSchedule schedule, std::map<std::size_t, std::vector<Player2Rule>> by_length,
                 std::string label = "blocks");

  Mixed action(std::size_t stage, const Belief& p, const StackedMixed* opponent) const override;
  std::string name() const override { return label_; }
  BlockSchedule schedule() const { return schedule_; }
  const std::map<std::size_t, std::vector<Player2Rule>>& rules() const { return by_length_; }
  // (block length, position in block), both from 1.
  std::pair<std::size_t, std::size_t> locate(std::size_t stage) const;

 private:
  BlockSchedule schedule_;
  std::map<std::size_t, std::vector<Player2Rule>> by_length_;
  std::string label_;
};

// Stage-s grid of the backward induction for theta: s-1 steps down the suffix chain.
std::vector<std::shared_ptr<const ValueGrid>> grid_chain(ValueEngine& engine, const ThetaWeights& theta);

std::shared_ptr<MarkovStrategy1> extract_p1_markov(ValueEngine& engine, const ThetaWeights& theta, bool exact = false);
std::shared_ptr<MarkovStrategy1> extract_p1_markov(ValueEngine& engine, std::size_t n, bool exact = false);
std::shared_ptr<BlockStrategy2> build_p2_cyclic(ValueEngine& engine, std::size_t n);
// Blocks of length 1..max_block are tabulated.
std::shared_ptr<BlockStrategy2> build_p2_growing(ValueEngine& engine, std::size_t max_block);
// First stage of block m under growing blocks: m(m-1)/2 + 1.
std::size_t growing_block_start(std::size_t m);

// Fixed opponents.
class ConstantStrategy1 final : public Player1Strategy {
 public:
  ConstantStrategy1(StackedMixed a, std::string label) : a_(std::move(a)), label_(std::move(label)) {}
  StackedMixed action(std::size_t, const Belief&, const Mixed*) const override { return a_; }
  std::string name() const override { return label_; }

 private:
  StackedMixed a_;
  std::string label_;
};

class ConstantStrategy2 final : public Player2Strategy {
 public:
  ConstantStrategy2(Mixed b, std::string label) : b_(std::move(b)), label_(std::move(label)) {}
  Mixed action(std::size_t, const Belief&, const StackedMixed*) const override { return b_; }
  std::string name() const override { return label_; }

 private:
  Mixed b_;
  std::string label_;
};

// Maximizes the stage payoff against the announced b, state by state.
class MyopicBestResponse1 final : public Player1Strategy {
 public:
  explicit MyopicBestResponse1(std::shared_ptr<const RepeatedGameSpec> spec) : spec_(std::move(spec)) {}
  StackedMixed action(std::size_t, const Belief& p, const Mixed* opponent) const override;
  bool needs_opponent() const override { return true; }
  std::string name() const override { return "myopic-best-response"; }

 private:
  std::shared_ptr<const RepeatedGameSpec> spec_;
};

// Minimizes the expected stage payoff against the declared stacked action.
class MyopicBestResponse2 final : public Player2Strategy {
 public:
  explicit MyopicBestResponse2(std::shared_ptr<const RepeatedGameSpec> spec) : spec_(std::move(spec)) {}
  Mixed action(std::size_t, const Belief& p, const StackedMixed* opponent) const override;
  bool needs_opponent() const override { return true; }
  std::string name() const override { return "myopic-best-response"; }

 private:
  std::shared_ptr<const RepeatedGameSpec> spec_;
};

inline constexpr const char* kAdversarySuiteVersion = "v1";

// Suite v1 against player 1: every pure stationary j, myopic best response, uniform.
std::vector<std::shared_ptr<const Player2Strategy>> adversaries_for_p1(std::shared_ptr<const RepeatedGameSpec> spec);
// Suite v1 against player 2: every map K -> I (up to max_pure of them, in
// lexicographic order), myopic best response, uniform.
std::vector<std::shared_ptr<const Player1Strategy>> adversaries_for_p2(std::shared_ptr<const RepeatedGameSpec> spec,
                                                                       std::size_t max_pure = 64);

// cav u for the Aumann-Maschler subclass, u(p) = value of sum_k p^k G^k.
class CavuOracle {
 public:
  CavuOracle(std::vector<Matrix> matrices, std::size_t resolution);

  std::size_t dim() const { return lattice_.dim(); }
  const SimplexLattice& lattice() const { return lattice_; }
  const std::vector<double>& u_values() const { return u_; }
  double u(const Belief& p) const;
  // Hull of the lattice values; cav u lies in [value(p), value(p) + error_bound()].
  double value(const Belief& p) const;
  double error_bound() const { return error_bound_; }

 private:
  std::vector<Matrix> matrices_;
  SimplexLattice lattice_;
  std::vector<double> u_;
  std::shared_ptr<const PointHull> hull_;
  double error_bound_ = 0.0;
};

// Throws UsageError when K > 3.
CavuOracle cavu_oracle(const std::vector<Matrix>& matrices, std::size_t resolution);

}  // namespace rgs
