#include "rgs/strategies.hpp"

#include <cmath>
#include <limits>

#include "rgs/error.hpp"

namespace rgs {

template <class Action>
const Action& BeliefRule<Action>::lookup(const Belief& p) const {
  if (lattice) return lattice_actions[lattice->nearest(p)];
  if (table.empty()) fail_precondition("strategy rule has no entries");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < table.size(); ++e) {
    const double d = l1_distance(table[e].first, p);
    if (d < best_d) {
      best_d = d;
      best = e;
    }
  }
  return table[best].second;
}

template struct BeliefRule<StackedMixed>;
template struct BeliefRule<Mixed>;

MarkovStrategy1::MarkovStrategy1(std::vector<Player1Rule> rules, std::string label)
    : rules_(std::move(rules)), label_(std::move(label)) {
  if (rules_.empty()) fail_precondition("MarkovStrategy1: no stage rules");
}

MarkovStrategy1::MarkovStrategy1(std::shared_ptr<const AuxiliaryGame> game,
                                 std::vector<std::shared_ptr<const ValueGrid>> chain, bool exact, std::string label)
    : label_(std::move(label)), exact_(exact), game_(std::move(game)), chain_(std::move(chain)) {
  if (chain_.empty()) fail_precondition("MarkovStrategy1: missing grids");
  for (const auto& g : chain_) {
    Player1Rule r;
    r.lattice = g->lattice;
    r.lattice_actions = g->argmax;
    rules_.push_back(std::move(r));
  }
}

StackedMixed MarkovStrategy1::action(std::size_t stage, const Belief& p, const Mixed*) const {
  if (stage == 0) fail_precondition("stages start at 1");
  const std::size_t s = (stage - 1) % rules_.size();
  if (!exact_) return rules_[s].lookup(p);

  std::vector<std::int64_t> key(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) key[k] = std::llround(p[k] * 1e12);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto hit = memo_.find({s, key});
    if (hit != memo_.end()) return hit->second;
  }
  const ValueGrid& g = *chain_[s];
  const ConcavePL* cont = g.next ? g.next->lower_hull.get() : nullptr;
  StackedMixed a = stage_lp(*game_, p, g.alpha, g.alpha < 1.0 ? cont : nullptr).a;
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(std::make_pair(s, std::move(key)), std::move(a)).first->second;
}

BlockStrategy2::BlockStrategy2(BlockSchedule schedule, std::map<std::size_t, std::vector<Player2Rule>> by_length,
                               std::string label)
    : schedule_(schedule), by_length_(std::move(by_length)), label_(std::move(label)) {
  if (by_length_.empty()) fail_precondition("BlockStrategy2: no blocks");
  for (const auto& [len, rules] : by_length_)
    if (len == 0 || rules.size() != len) fail_precondition("BlockStrategy2: block of length " + std::to_string(len) +
                                                           " has " + std::to_string(rules.size()) + " rules");
  if (schedule_ == BlockSchedule::Cyclic && by_length_.size() != 1)
    fail_precondition("BlockStrategy2: cyclic schedule takes one block length");
  if (schedule_ == BlockSchedule::Growing)
    for (std::size_t m = 1; m <= by_length_.rbegin()->first; ++m)
      if (!by_length_.count(m)) fail_precondition("BlockStrategy2: growing schedule misses length " + std::to_string(m));
}

std::size_t growing_block_start(std::size_t m) { return m * (m - 1) / 2 + 1; }

std::pair<std::size_t, std::size_t> BlockStrategy2::locate(std::size_t stage) const {
  if (stage == 0) fail_precondition("stages start at 1");
  if (schedule_ == BlockSchedule::Cyclic) {
    const std::size_t L = by_length_.begin()->first;
    return {L, (stage - 1) % L + 1};
  }
  const std::size_t top = by_length_.rbegin()->first;
  const std::size_t after = growing_block_start(top + 1);
  if (stage >= after) return {top, (stage - after) % top + 1};
  std::size_t m = 1;
  while (growing_block_start(m + 1) <= stage) ++m;
  return {m, stage - growing_block_start(m) + 1};
}

Mixed BlockStrategy2::action(std::size_t stage, const Belief& p, const StackedMixed*) const {
  const auto [len, pos] = locate(stage);
  return by_length_.at(len)[pos - 1].lookup(p);
}

std::vector<std::shared_ptr<const ValueGrid>> grid_chain(ValueEngine& engine, const ThetaWeights& theta) {
  std::vector<std::shared_ptr<const ValueGrid>> chain{engine.theta_grid(theta)};
  while (chain.size() < theta.max_stage()) {
    if (!chain.back()->next) fail_precondition("grid_chain: suffix grid missing");
    chain.push_back(chain.back()->next);
  }
  return chain;
}

std::shared_ptr<MarkovStrategy1> extract_p1_markov(ValueEngine& engine, const ThetaWeights& theta, bool exact) {
  return std::make_shared<MarkovStrategy1>(engine.game_ptr(), grid_chain(engine, theta), exact,
                                           "p1-markov[" + theta.to_string() + "]");
}

std::shared_ptr<MarkovStrategy1> extract_p1_markov(ValueEngine& engine, std::size_t n, bool exact) {
  auto s = std::make_shared<MarkovStrategy1>(engine.game_ptr(), grid_chain(engine, ThetaWeights::uniform(n)), exact,
                                             "p1-markov[n=" + std::to_string(n) + "]");
  return s;
}

namespace {

std::vector<Player2Rule> p2_rules(ValueEngine& engine, std::size_t n) {
  std::vector<Player2Rule> rules;
  for (const auto& g : grid_chain(engine, ThetaWeights::uniform(n))) {
    Player2Rule r;
    r.lattice = g->lattice;
    r.lattice_actions = g->minimizer;
    rules.push_back(std::move(r));
  }
  return rules;
}

}  // namespace

std::shared_ptr<BlockStrategy2> build_p2_cyclic(ValueEngine& engine, std::size_t n) {
  if (n == 0) fail_precondition("build_p2_cyclic: n must be positive");
  std::map<std::size_t, std::vector<Player2Rule>> by;
  by[n] = p2_rules(engine, n);
  return std::make_shared<BlockStrategy2>(BlockSchedule::Cyclic, std::move(by),
                                          "p2-cyclic[n=" + std::to_string(n) + "]");
}

std::shared_ptr<BlockStrategy2> build_p2_growing(ValueEngine& engine, std::size_t max_block) {
  if (max_block == 0) fail_precondition("build_p2_growing: max_block must be positive");
  std::map<std::size_t, std::vector<Player2Rule>> by;
  for (std::size_t m = 1; m <= max_block; ++m) by[m] = p2_rules(engine, m);
  return std::make_shared<BlockStrategy2>(BlockSchedule::Growing, std::move(by),
                                          "p2-growing[max=" + std::to_string(max_block) + "]");
}

StackedMixed MyopicBestResponse1::action(std::size_t, const Belief&, const Mixed* b) const {
  if (!b) fail_precondition("myopic best response needs the opponent's action");
  const RepeatedGameSpec& s = *spec_;
  StackedMixed a(s.K(), s.I());
  for (std::size_t k = 0; k < s.K(); ++k) {
    std::size_t best = 0;
    double best_v = -INFINITY;
    for (std::size_t i = 0; i < s.I(); ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < s.J(); ++j) v += (*b)[j] * s.g(k, i, j);
      if (v > best_v + 1e-15) {
        best_v = v;
        best = i;
      }
    }
    a(k, best) = 1.0;
  }
  return a;
}

Mixed MyopicBestResponse2::action(std::size_t, const Belief& p, const StackedMixed* a) const {
  if (!a) fail_precondition("myopic best response needs the opponent's action");
  const RepeatedGameSpec& s = *spec_;
  std::size_t best = 0;
  double best_v = INFINITY;
  for (std::size_t j = 0; j < s.J(); ++j) {
    double v = 0.0;
    for (std::size_t k = 0; k < s.K(); ++k)
      for (std::size_t i = 0; i < s.I(); ++i) v += p[k] * (*a)(k, i) * s.g(k, i, j);
    if (v < best_v - 1e-15) {
      best_v = v;
      best = j;
    }
  }
  Mixed b(s.J(), 0.0);
  b[best] = 1.0;
  return b;
}

std::vector<std::shared_ptr<const Player2Strategy>> adversaries_for_p1(std::shared_ptr<const RepeatedGameSpec> spec) {
  std::vector<std::shared_ptr<const Player2Strategy>> out;
  for (std::size_t j = 0; j < spec->J(); ++j) {
    Mixed b(spec->J(), 0.0);
    b[j] = 1.0;
    out.push_back(std::make_shared<ConstantStrategy2>(b, "pure:" + spec->actions2[j]));
  }
  out.push_back(std::make_shared<MyopicBestResponse2>(spec));
  out.push_back(std::make_shared<ConstantStrategy2>(Mixed(spec->J(), 1.0 / static_cast<double>(spec->J())), "uniform"));
  return out;
}

std::vector<std::shared_ptr<const Player1Strategy>> adversaries_for_p2(std::shared_ptr<const RepeatedGameSpec> spec,
                                                                       std::size_t max_pure) {
  std::vector<std::shared_ptr<const Player1Strategy>> out;
  const std::size_t K = spec->K(), I = spec->I();
  std::vector<std::size_t> f(K, 0);
  for (std::size_t count = 0; count < max_pure; ++count) {
    StackedMixed a(K, I);
    std::string label = "pure:";
    for (std::size_t k = 0; k < K; ++k) {
      a(k, f[k]) = 1.0;
      label += (k ? "," : "") + spec->actions1[f[k]];
    }
    out.push_back(std::make_shared<ConstantStrategy1>(std::move(a), label));
    // next map in lexicographic order, last state fastest
    std::size_t k = K;
    while (k > 0 && ++f[k - 1] == I) f[--k] = 0;
    if (k == 0) break;
  }
  out.push_back(std::make_shared<MyopicBestResponse1>(spec));
  out.push_back(std::make_shared<ConstantStrategy1>(StackedMixed::uniform(K, I), "uniform"));
  return out;
}

}  // namespace rgs
