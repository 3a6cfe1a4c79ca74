#include <doctest.h>

#include <random>

#include "rgs/error.hpp"
#include "rgs/measures.hpp"

using namespace rgs;

TEST_CASE("measure construction merges and sorts") {
  const BeliefMeasure u({{{0.5, 0.5}, 0.25}, {{0.2, 0.8}, 0.5}, {{0.5, 0.5}, 0.25}});
  REQUIRE(u.size() == 2);
  CHECK(u.atoms()[0].point[0] == doctest::Approx(0.2));
  CHECK(u.atoms()[1].weight == doctest::Approx(0.5));
  CHECK_THROWS(BeliefMeasure({{{0.5, 0.5}, 0.4}}));
}

TEST_CASE("disintegration") {
  const BeliefMeasure u = disintegrate({0.3, 0.2, 0.1, 0.4}, 2, 2);
  REQUIRE(u.size() == 2);
  // sorted: (1/3, 2/3) first
  CHECK(u.atoms()[0].point[0] == doctest::Approx(1.0 / 3));
  CHECK(u.atoms()[0].weight == doctest::Approx(0.6));
  CHECK(u.atoms()[1].point[0] == doctest::Approx(0.75));
  CHECK(u.atoms()[1].weight == doctest::Approx(0.4));
  // signal independent of the state: one atom
  CHECK(disintegrate({0.12, 0.18, 0.28, 0.42}, 2, 2).size() == 1);
  // revealing signal: vertices
  const BeliefMeasure r = disintegrate({0.3, 0.0, 0.0, 0.7}, 2, 2);
  CHECK(r.size() == 2);
  CHECK(barycenter(r)[0] == doctest::Approx(0.3));
}

TEST_CASE("Wasserstein distance") {
  const auto a = BeliefMeasure::dirac({0.2, 0.8});
  const auto b = BeliefMeasure::dirac({0.7, 0.3});
  CHECK(wasserstein(a, b).value == doctest::Approx(1.0));
  CHECK(wasserstein(a, a).value == doctest::Approx(0.0).epsilon(1e-12));
  const BeliefMeasure m({{{1, 0}, 0.5}, {{0, 1}, 0.5}});
  CHECK(wasserstein(m, BeliefMeasure::dirac({0.5, 0.5})).value == doctest::Approx(1.0));
}

TEST_CASE("Choquet order: splitting is dominated, merging is not") {
  const auto center = BeliefMeasure::dirac({0.5, 0.5});
  const BeliefMeasure split({{{1, 0}, 0.5}, {{0, 1}, 0.5}});
  const ChoquetResult yes = choquet_dominates(center, split);
  CHECK(yes.dominates);
  CHECK(yes.certificate.coupling(0, 0) == doctest::Approx(0.5));
  const ChoquetResult no = choquet_dominates(split, center);
  CHECK_FALSE(no.dominates);
  // the separator is concave and reverses the inequality
  double uf = 0.0;
  for (const Atom& a : split.atoms()) uf += a.weight * no.certificate.separator(a.point);
  CHECK(uf < no.certificate.separator({0.5, 0.5}) - 1e-9);
  // different barycenters are never comparable
  CHECK_FALSE(choquet_dominates(center, BeliefMeasure::dirac({0.4, 0.6})).dominates);
}

TEST_CASE("split decomposition and splitting action") {
  const auto center = BeliefMeasure::dirac({0.5, 0.5});
  const BeliefMeasure v({{{0.8, 0.2}, 0.5}, {{0.2, 0.8}, 0.5}});
  const auto parts = split_decomposition(center, v);
  REQUIRE(parts.size() == 1);
  REQUIRE(parts[0].parts.size() == 2);
  std::vector<SplitComponent> comps = parts[0].parts;
  StackedMixed e0(2, 2), e1(2, 2);
  e0(0, 0) = e0(1, 0) = 1.0;
  e1(0, 1) = e1(1, 1) = 1.0;
  // e0 goes with the component leaning towards state 0
  const bool first_high = comps[0].point[0] > 0.5;
  const StackedMixed a = splitting_action({0.5, 0.5}, comps, first_high ? std::vector{e0, e1} : std::vector{e1, e0});
  CHECK(a(0, 0) == doctest::Approx(0.8));
  CHECK(a(1, 0) == doctest::Approx(0.2));
  CHECK_THROWS_AS(split_decomposition(v, center), PreconditionError);
  CHECK_THROWS_AS(splitting_action({0.5, 0.5}, {{1.0, {0.4, 0.6}}}, {e0}), PreconditionError);
}

TEST_CASE("random Choquet agreement with sampled concave functions") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    // u: two atoms; v: each atom of u split in two along a random direction
    std::vector<Atom> ua, va;
    for (int s = 0; s < 2; ++s) {
      const double x = 0.2 + 0.6 * U(rng), w = s == 0 ? 0.4 : 0.6;
      ua.push_back({{x, 1 - x}, w});
      const double lo = x * U(rng), hi = x + (1 - x) * U(rng);
      const double lam = (hi - x) / (hi - lo);
      va.push_back({{lo, 1 - lo}, w * lam});
      va.push_back({{hi, 1 - hi}, w * (1 - lam)});
    }
    const BeliefMeasure u(ua), v(va);
    CHECK(choquet_dominates(u, v).dominates);
    for (int f = 0; f < 10; ++f) {
      const double a1 = U(rng), b1 = U(rng), a2 = U(rng), b2 = U(rng);
      auto conc = [&](const Belief& p) { return std::min(a1 * p[0] + b1 * p[1], a2 * p[0] + b2 * p[1]); };
      CHECK(u.integrate(conc) >= v.integrate(conc) - 1e-9);
    }
  }
}
