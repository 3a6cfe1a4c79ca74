#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rgs/game_model.hpp"
#include "rgs/strategies.hpp"

namespace rgs {

struct PlayoutConfig {
  std::size_t horizon = 1;
  std::size_t replications = 1;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool trace = false;
};

struct PayoffStats {
  std::size_t horizon = 0;
  std::size_t replications = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double ci = 0.0;  // 1.96 * stderr
  std::vector<double> stage_means;
};

struct TraceRow {
  std::size_t replication, stage, k, i, j;
  double payoff;
};

struct SimulationResult {
  PayoffStats stats;
  std::vector<PayoffStats> at_horizons;  // one per requested horizon
  std::vector<TraceRow> trace;           // only with config.trace
};

// Plays the original game: (k,c,d) ~ pi, then actions, payoff, (k',c',d') ~ q.
// The public belief is updated from the declared stacked action and the
// realized signal d. Payoffs are in unit scale.
SimulationResult simulate(const AuxiliaryGame& game, const Player1Strategy& p1, const Player2Strategy& p2,
                          const PlayoutConfig& config, const std::vector<std::size_t>& horizons = {});

std::string trace_csv(const std::vector<TraceRow>& rows);

enum class GuaranteeMode { Player1, Player2 };

struct GuaranteeCell {
  std::string adversary;
  std::size_t horizon = 0;
  double mean = 0.0, ci = 0.0;
  bool pass = false;
};

struct GuaranteeReport {
  GuaranteeMode mode = GuaranteeMode::Player1;
  double target = 0.0, epsilon = 0.0;
  std::string suite;
  std::vector<GuaranteeCell> cells;
  bool passed() const;
};

// Player 1 mode: every cell needs mean >= v - eps - ci. Player 2 mode: mean <= v + eps + ci.
GuaranteeReport guarantee_check_p1(const AuxiliaryGame& game, const Player1Strategy& sigma, double v, double eps,
                                   const std::vector<std::size_t>& horizons,
                                   const std::vector<std::shared_ptr<const Player2Strategy>>& suite,
                                   PlayoutConfig config);
GuaranteeReport guarantee_check_p2(const AuxiliaryGame& game, const Player2Strategy& tau, double v, double eps,
                                   const std::vector<std::size_t>& horizons,
                                   const std::vector<std::shared_ptr<const Player1Strategy>>& suite,
                                   PlayoutConfig config);

}  // namespace rgs
