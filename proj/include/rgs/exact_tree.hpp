#pragma once

#include <cstddef>

#include "rgs/game_model.hpp"
#include "rgs/theta.hpp"
#include "rgs/value_grid.hpp"

namespace rgs {

struct ExactTreeOptions {
  std::size_t max_stage = 4;      // depth guard
  std::size_t max_nodes = 20000;  // public-history nodes
};

struct ExactTreeResult {
  Bounds bounds;     // LP optimum widened by its residuals
  double value = 0.0;
  StackedMixed a;    // first-stage action at the root
  Mixed b;           // first-stage minimizer at the root (uniform when theta_1 = 0)
  std::size_t nodes = 0;
};

// v_[theta](p) as one linear program over the tree of public signal histories
// (variables x_h(k,i) = P(h, k, i) under player 1's behaviour).
ExactTreeResult value_theta_exact(const AuxiliaryGame& game, const ThetaWeights& theta, const Belief& p,
                                  const ExactTreeOptions& options = {});

// sum_p u(p) v_[theta](p)
Bounds value_theta_exact(const AuxiliaryGame& game, const ThetaWeights& theta, const BeliefMeasure& u,
                         const ExactTreeOptions& options = {});

}  // namespace rgs
