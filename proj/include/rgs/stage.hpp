#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rgs/concave.hpp"
#include "rgs/game_model.hpp"
#include "rgs/measures.hpp"
#include "rgs/tolerances.hpp"

namespace rgs {

struct StageLPOptions {
  // must sit above the LP primal tolerance or the same cut comes back forever
  double cut_tol = 4.0 * kTol.feasibility;
  std::size_t max_rounds = 2000;
};

// One application of the Shapley operator at p with a concave piecewise-linear
// continuation, solved exactly in the variables x(k,i) = p^k a^k(i) by cutting
// planes on the perspective of the continuation.
struct StageLPResult {
  double achieved = 0.0;         // objective of a under the continuation: a lower bound
  double relaxed = 0.0;          // master LP optimum
  double certified_upper = 0.0;  // relaxed + dual residual slack: an upper bound
  std::vector<double> plane;     // c with c.p' >= operator value at every p' (p' on the simplex)
  StackedMixed a;                // maximizer
  Mixed b;                       // minimizer from the duals of the payoff rows
  std::size_t rounds = 0;
  std::size_t cuts = 0;
};

// continuation may be null when alpha == 1.
StageLPResult stage_lp(const AuxiliaryGame& game, const Belief& p, double alpha, const ConcavePL* continuation,
                       const StageLPOptions& options = {});

// Objective alpha * min_j g(p,a,e_j) + (1-alpha) * cont(l(p,a)) for a given a.
double stage_objective(const AuxiliaryGame& game, const Belief& p, double alpha, const StackedMixed& a,
                       const std::function<double(const BeliefMeasure&)>& continuation);

struct StageSolveOptions {
  double resolution = 1.0 / 8.0;      // per-state simplex grid over actions
  std::size_t max_candidates = 20000;
  std::size_t nm_iterations = 4000;
  double nm_tol = 1e-12;
  std::size_t b_candidates = 64;      // rows of the matrix game used for b*
};

struct StageSolution {
  double value = 0.0;  // best found: a lower bound on the operator value
  StackedMixed a;
  Mixed b;
  double gap_estimate = 0.0;  // spread of the final search simplex (heuristic)
  bool budget_exhausted = false;
  std::size_t evaluations = 0;
};

// General continuation: grid search over products of action simplices, then
// Nelder-Mead refinement from the best candidate.
StageSolution stage_solve(const AuxiliaryGame& game, const Belief& p, double alpha,
                          const std::function<double(const BeliefMeasure&)>& continuation,
                          const StageSolveOptions& options = {});

}  // namespace rgs
