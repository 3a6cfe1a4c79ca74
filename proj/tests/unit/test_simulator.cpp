#include <doctest.h>

#include <cmath>

#include "rgs/error.hpp"
#include "rgs/mdp_view.hpp"
#include "rgs/rng.hpp"
#include "rgs/simulator.hpp"
#include "rgs/spec_io.hpp"
#include "rgs/strategies.hpp"
#include "rgs/value_grid.hpp"

using namespace rgs;

namespace {

std::shared_ptr<const AuxiliaryGame> load(const std::string& name) {
  return std::make_shared<const AuxiliaryGame>(load_spec(std::string(RGS_DATA_DIR) + "/" + name + ".json"));
}

using Block = std::array<std::uint32_t, 4>;

class Broken1 final : public Player1Strategy {
 public:
  StackedMixed action(std::size_t, const Belief& p, const Mixed*) const override {
    return StackedMixed(p.size(), 2, std::vector<double>(p.size() * 2, 0.7));
  }
  std::string name() const override { return "broken"; }
};

}  // namespace

TEST_CASE("Philox4x32-10 known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams") {
  PhiloxStream a(5, 0), b(5, 0), c(5, 1);
  bool differs = false;
  for (int n = 0; n < 64; ++n) {
    const std::uint32_t x = a.next_u32();
    CHECK(x == b.next_u32());
    differs |= x != c.next_u32();
  }
  CHECK(differs);
  PhiloxStream u(9, 3);
  const std::vector<double> probs{0.0, 0.25, 0.0, 0.75, 0.0};
  std::size_t hits[5] = {};
  for (int n = 0; n < 20000; ++n) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
    ++hits[u.categorical(probs)];
  }
  CHECK(hits[0] == 0);
  CHECK(hits[2] == 0);
  CHECK(hits[4] == 0);
  CHECK(std::abs(hits[1] / 20000.0 - 0.25) < 0.02);
}

TEST_CASE("simulation is deterministic in the seed and independent of jobs") {
  const auto g = load("mc_switch");
  ValueEngine e(g, EngineConfig{1.0 / 16.0});
  const auto sigma = extract_p1_markov(e, 3);
  const auto tau = build_p2_cyclic(e, 2);
  PlayoutConfig cfg{12, 300, 42, 1, true};
  const SimulationResult r1 = simulate(*g, *sigma, *tau, cfg, {4, 12});
  cfg.jobs = 4;
  const SimulationResult r2 = simulate(*g, *sigma, *tau, cfg, {4, 12});
  CHECK(r1.stats.mean == r2.stats.mean);
  CHECK(r1.stats.stderr_ == r2.stats.stderr_);
  REQUIRE(r1.trace.size() == r2.trace.size());
  CHECK(r1.trace.size() == 300 * 12);
  for (std::size_t x = 0; x < r1.trace.size(); ++x) CHECK(r1.trace[x].payoff == r2.trace[x].payoff);
  REQUIRE(r1.at_horizons.size() == 2);
  CHECK(r1.at_horizons[1].mean == r1.stats.mean);
  cfg.seed = 43;
  CHECK(simulate(*g, *sigma, *tau, cfg).stats.mean != r1.stats.mean);
  const std::string csv = trace_csv(r1.trace);
  CHECK(csv.rfind("replication,stage", 0) == 0);
}

TEST_CASE("constant payoff has no spread") {
  const Matrix c{{0.3, 0.3}, {0.3, 0.3}};
  const AuxiliaryGame g(build_aumann_maschler({c, c}, {0.4, 0.6}));
  const ConstantStrategy1 a(StackedMixed::uniform(2, 2), "u");
  const ConstantStrategy2 b({0.5, 0.5}, "u");
  const SimulationResult r = simulate(g, a, b, PlayoutConfig{5, 50, 1});
  CHECK(r.stats.mean == doctest::Approx(0.3));
  CHECK(r.stats.stderr_ == doctest::Approx(0.0));
}

TEST_CASE("one state: confidence intervals cover the expected payoff") {
  const auto g = load("k1_skew");
  const ConstantStrategy1 a(StackedMixed(1, 2, {0.3, 0.7}), "a");
  const ConstantStrategy2 b({0.6, 0.4}, "b");
  const double exact = stage_payoff(g->spec(), {1.0}, StackedMixed(1, 2, {0.3, 0.7}), {0.6, 0.4});
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SimulationResult r = simulate(*g, a, b, PlayoutConfig{10, 40, seed});
    if (std::abs(r.stats.mean - exact) <= r.stats.ci) ++covered;
  }
  CHECK(covered >= 85);
}

TEST_CASE("stage means match the measure play against myopic player 2") {
  const auto g = load("mc_switch");
  ValueEngine e(g, EngineConfig{1.0 / 16.0});
  const auto sigma = extract_p1_markov(e, 3);
  const auto spec = g->spec_ptr();
  const MyopicBestResponse2 br(spec);
  const MarkovPlay play = play_of_markov_strategy(*g, initial_belief_measure(*g), *sigma, 3);
  const SimulationResult r = simulate(*g, *sigma, br, PlayoutConfig{3, 40000, 3, 4});
  for (std::size_t t = 0; t < 3; ++t) CHECK(std::abs(r.stats.stage_means[t] - play.steps[t].payoff) < 0.01);
}

TEST_CASE("invalid declared actions are reported") {
  const auto g = load("am_quadratic");
  const Broken1 a;
  const ConstantStrategy2 b({0.5, 0.5}, "u");
  CHECK_THROWS_AS(simulate(*g, a, b, PlayoutConfig{2, 2, 0}), Error);
}

TEST_CASE("guarantee checks") {
  const auto g = load("k1_skew");
  ValueEngine e(g);
  const auto sigma = extract_p1_markov(e, 2);
  const auto spec = g->spec_ptr();
  const double v = 0.57 / 1.1;
  const GuaranteeReport rep = guarantee_check_p1(*g, *sigma, v, 0.02, {10, 40}, adversaries_for_p1(spec),
                                                 PlayoutConfig{40, 200, 7});
  CHECK(rep.passed());
  CHECK(rep.cells.size() == 2 * adversaries_for_p1(spec).size());
  const ConstantStrategy1 bad(StackedMixed(1, 2, {1.0, 0.0}), "bad");
  const std::vector<std::shared_ptr<const Player2Strategy>> suite{
      std::make_shared<const ConstantStrategy2>(Mixed{0.0, 1.0}, "j1"),
      std::make_shared<const ConstantStrategy2>(Mixed{1.0, 0.0}, "j0")};
  CHECK_FALSE(guarantee_check_p1(*g, bad, v, 0.02, {40}, suite, PlayoutConfig{40, 200, 7}).passed());
}
