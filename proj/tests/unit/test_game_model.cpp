#include <doctest.h>

#include <random>

#include "rgs/error.hpp"
#include "rgs/game_model.hpp"
#include "rgs/spec_io.hpp"

using namespace rgs;

namespace {

RepeatedGameSpec blank(std::size_t K, std::size_t I, std::size_t J, std::size_t C, std::size_t D) {
  RepeatedGameSpec s;
  auto names = [](const char* p, std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t x = 0; x < n; ++x) v.push_back(p + std::to_string(x));
    return v;
  };
  s.states = names("k", K);
  s.actions1 = names("i", I);
  s.actions2 = names("j", J);
  s.signals1 = names("c", C);
  s.signals2 = names("d", D);
  s.initial.assign(s.outcomes(), 0.0);
  s.payoff.assign(K * I * J, 0.0);
  s.transition.assign(K * I * J * s.outcomes(), 0.0);
  return s;
}

double& qref(RepeatedGameSpec& s, std::size_t k, std::size_t i, std::size_t j, std::size_t k2, std::size_t c,
             std::size_t d) {
  return s.transition[((k * s.I() + i) * s.J() + j) * s.outcomes() + s.outcome(k2, c, d)];
}

RepeatedGameSpec blank_ambiguous() {
  RepeatedGameSpec bad = blank(2, 1, 1, 1, 1);
  bad.initial[bad.outcome(0, 0, 0)] = 0.5;
  bad.initial[bad.outcome(1, 0, 0)] = 0.5;
  qref(bad, 0, 0, 0, 0, 0, 0) = 1.0;
  qref(bad, 1, 0, 0, 1, 0, 0) = 1.0;
  return bad;
}

RepeatedGameSpec am_quadratic() {
  return build_aumann_maschler({Matrix{{1, 0}, {0, 0}}, Matrix{{0, 0}, {0, 1}}}, {0.5, 0.5});
}

}  // namespace

TEST_CASE("HA' on builder output and on an ambiguous signal") {
  const RepeatedGameSpec am = am_quadratic();
  const HypothesisReport ok = validate_ha_prime(am);
  CHECK(ok.holds);
  CHECK(ok.max_violation == 0.0);
  for (std::size_t c = 0; c < am.C(); ++c) CHECK(ok.k_hat[c] >= 0);

  const HypothesisReport r = validate_ha_prime(blank_ambiguous());
  CHECK_FALSE(r.holds);
  // the initial law alone puts half its mass off the chosen (k, d)
  CHECK(r.max_violation >= 0.5);
}

TEST_CASE("HA' with C = K x D and unreachable signals") {
  RepeatedGameSpec s = blank(2, 1, 1, 5, 2);  // c = 2k + d, c4 never used
  s.initial[s.outcome(0, 0, 0)] = 0.5;
  s.initial[s.outcome(1, 3, 1)] = 0.5;
  for (std::size_t k = 0; k < 2; ++k) qref(s, k, 0, 0, 1 - k, 2 * (1 - k) + k, k) = 1.0;
  const HypothesisReport r = validate_ha_prime(s);
  CHECK(r.holds);
  CHECK(r.k_hat[3] == 1);
  CHECK(r.d_hat[3] == 1);
  CHECK(r.unreachable_signals == std::vector<std::size_t>{4});
  CHECK(canonical_signal(s, 1, 1) == 3);
  CHECK(canonical_signal(s, 1, 0) == 2);
  CHECK_THROWS_AS(canonical_signal(blank_ambiguous(), 0, 0), HypothesisError);
}

TEST_CASE("HB' detects a transition steered by player 2") {
  CHECK(validate_hb_prime(am_quadratic()).holds);
  RepeatedGameSpec s = blank(2, 1, 2, 2, 1);
  s.initial[s.outcome(0, 0, 0)] = 1.0;
  for (std::size_t k = 0; k < 2; ++k) {
    qref(s, k, 0, 0, k, k, 0) = 1.0;
    qref(s, k, 0, 1, 1 - k, 1 - k, 0) = 1.0;
  }
  const HypothesisReport r = validate_hb_prime(s);
  CHECK_FALSE(r.holds);
  REQUIRE(r.offending.has_value());
  CHECK(r.offending->j2 == 1);
  CHECK(r.max_violation == doctest::Approx(2.0));
  CHECK_FALSE(validate_hb(s).holds);
  CHECK_THROWS_AS(AuxiliaryGame{s}, HypothesisError);
}

TEST_CASE("malformed tables name the table") {
  RepeatedGameSpec s = am_quadratic();
  s.initial[0] += 0.1;
  try {
    s.validate();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("initial") != std::string::npos);
  }
  RepeatedGameSpec t = am_quadratic();
  t.payoff[0] = 1.5;
  CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("initial belief measure") {
  CHECK(initial_belief_measure(AuxiliaryGame(am_quadratic())).size() == 1);
  RepeatedGameSpec s = blank(2, 1, 1, 4, 2);  // c = 2k + d
  s.initial[s.outcome(0, 0, 0)] = 0.3;
  s.initial[s.outcome(0, 1, 1)] = 0.2;
  s.initial[s.outcome(1, 2, 0)] = 0.1;
  s.initial[s.outcome(1, 3, 1)] = 0.4;
  for (std::size_t k = 0; k < 2; ++k) qref(s, k, 0, 0, k, 2 * k, 0) = 1.0;
  const BeliefMeasure u = initial_belief_measure(AuxiliaryGame(s));
  REQUIRE(u.size() == 2);
  CHECK(u.atoms()[0].point[0] == doctest::Approx(1.0 / 3));
  CHECK(u.atoms()[0].weight == doctest::Approx(0.6));
  CHECK(u.atoms()[1].point[0] == doctest::Approx(0.75));
  CHECK(u.atoms()[1].weight == doctest::Approx(0.4));
}

TEST_CASE("stage payoff") {
  const RepeatedGameSpec am = am_quadratic();
  StackedMixed a(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  CHECK(stage_payoff(am, {1, 0}, a, {1, 0}) == doctest::Approx(1.0));
  CHECK(stage_payoff(am, {0, 1}, a, {1, 0}) == doctest::Approx(0.0));
  const RepeatedGameSpec sc = build_single_controller({Matrix{{0.2, 0.5}, {0.6, 0.1}}, Matrix{{0.9, 0.5}, {0.4, 0.8}}},
                                                      {{0.3, 0.7}, {0.9, 0.1}, {0.5, 0.5}, {0.8, 0.2}}, {0.5, 0.5}, true);
  CHECK(stage_payoff(sc, {0.5, 0.5}, StackedMixed::uniform(2, 2), {0.5, 0.5}) ==
        doctest::Approx((0.2 + 0.5 + 0.6 + 0.1 + 0.9 + 0.5 + 0.4 + 0.8) / 8));
}

TEST_CASE("transition marginal and belief transition") {
  const RepeatedGameSpec sc = build_single_controller({Matrix{{0.2, 0.5}, {0.6, 0.1}}, Matrix{{0.9, 0.5}, {0.4, 0.8}}},
                                                      {{0.3, 0.7}, {0.9, 0.1}, {0.5, 0.5}, {0.8, 0.2}}, {0.5, 0.5}, false);
  const AuxiliaryGame g(sc);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = U(rng), y = U(rng), z = U(rng), w = U(rng);
    const Belief p{x, 1 - x};
    const StackedMixed a1(2, 2, {y, 1 - y, z, 1 - z}), a2(2, 2, {w, 1 - w, 1 - z, z});
    const StackedMixed mid(2, 2, {(y + w) / 2, 1 - (y + w) / 2, 0.5, 0.5});
    const auto q1 = transition_marginal(g, p, a1), q2 = transition_marginal(g, p, a2), qm = transition_marginal(g, p, mid);
    for (std::size_t e = 0; e < qm.size(); ++e) CHECK(qm[e] == doctest::Approx(0.5 * (q1[e] + q2[e])));
    // direct enumeration over (k, i)
    std::vector<double> direct(qm.size(), 0.0);
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t e = 0; e < direct.size(); ++e) direct[e] += p[k] * a1(k, i) * g.qbar(k, i)[e];
    for (std::size_t e = 0; e < direct.size(); ++e) CHECK(q1[e] == doctest::Approx(direct[e]));
    const BeliefMeasure l = belief_transition(g, p, a1);
    CHECK(l.size() <= g.D());
    double mass0 = 0.0;
    for (std::size_t d = 0; d < g.D(); ++d) mass0 += q1[d];
    CHECK(barycenter(l)[0] == doctest::Approx(mass0));
  }
}

TEST_CASE("builders and subclass detection") {
  const RepeatedGameSpec cv = build_aumann_maschler({Matrix{{-1, 0}, {0, 0}}, Matrix{{0, 0}, {0, -1}}}, {0.5, 0.5});
  CHECK(cv.scale.offset == doctest::Approx(-1));
  CHECK(cv.scale.scale == doctest::Approx(1));
  CHECK(cv.g(0, 0, 0) == doctest::Approx(0.0));
  CHECK(cv.scale.to_original(cv.g(0, 1, 1)) == doctest::Approx(0.0));
  CHECK(detect_aumann_maschler(cv).has_value());
  RepeatedGameSpec stripped = am_quadratic();
  stripped.aumann_maschler.reset();
  const auto det = detect_aumann_maschler(stripped);
  REQUIRE(det.has_value());
  CHECK(det->matrices[1](1, 1) == doctest::Approx(1.0));
  const RepeatedGameSpec mc = build_markov_chain_game({Matrix{{1, 0}, {0, 0}}, Matrix{{0, 0}, {0, 1}}},
                                                      {{0.9, 0.1}, {0.9, 0.1}, {0.1, 0.9}, {0.1, 0.9}}, {0.5, 0.5});
  CHECK_FALSE(detect_aumann_maschler(mc).has_value());
  CHECK(validate_ha_prime(mc).holds);
  CHECK(validate_hb_prime(mc).holds);
  CHECK_THROWS_AS(build_aumann_maschler({}, {}), PreconditionError);
}

TEST_CASE("spec JSON round trip and strict keys") {
  const RepeatedGameSpec am = am_quadratic();
  const nlohmann::json j = spec_to_json(am);
  const RepeatedGameSpec back = spec_from_json(j);
  CHECK(back.payoff == am.payoff);
  CHECK(back.transition == am.transition);
  CHECK(back.initial == am.initial);
  nlohmann::json extra = j;
  extra["bogus"] = 1;
  CHECK_THROWS_AS(spec_from_json(extra), ValidationError);
  nlohmann::json missing = j;
  missing.erase("payoff");
  CHECK_THROWS_AS(spec_from_json(missing), ValidationError);
  CHECK_THROWS_AS(load_spec("/nonexistent/spec.json"), ValidationError);
  const RepeatedGameSpec disk = load_spec(std::string(RGS_DATA_DIR) + "/am_quadratic.json");
  CHECK(disk.payoff == am.payoff);
}
