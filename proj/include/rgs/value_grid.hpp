#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rgs/concave.hpp"
#include "rgs/game_model.hpp"
#include "rgs/lattice.hpp"
#include "rgs/stage.hpp"
#include "rgs/theta.hpp"

namespace rgs {

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
  double gap() const { return upper - lower; }
  double mid() const { return 0.5 * (lower + upper); }
};

// Certified sandwich lower <= v_[theta] <= upper on a simplex lattice, plus the
// concave pieces used to interpolate off the lattice.
struct ValueGrid {
  std::shared_ptr<const SimplexLattice> lattice;
  double delta = 0.0;
  ThetaWeights theta;
  double alpha = 1.0;  // theta_1
  std::string label;
  std::vector<double> lower, upper;
  std::vector<StackedMixed> argmax;  // a*(g) from the lower solve
  std::vector<Mixed> minimizer;      // b*(g) from the upper solve
  std::shared_ptr<const PlaneSet> upper_planes;  // global majorant (tangents from duals)
  std::shared_ptr<const PointHull> lower_hull;   // concave hull of lower values
  std::shared_ptr<const ValueGrid> next;         // grid of theta_plus, null at the last stage
  bool warning = false;                          // gap > 0.5 somewhere

  std::size_t size() const { return lower.size(); }
  double lower_at(const Belief& p) const;
  double upper_at(const Belief& p) const;
  Bounds at(const Belief& p) const { return {lower_at(p), upper_at(p)}; }
  double max_gap() const;
};

Bounds evaluate_measure(const ValueGrid& grid, const BeliefMeasure& u);

struct EngineConfig {
  double delta = 0.0;  // 0 picks 1/32 for two states, 1/16 for three, 1/8 beyond
  std::size_t jobs = 1;
  StageLPOptions stage;
};

double default_delta(std::size_t states);

// Memoizes grids by theta suffix; v_n, v_{m,n} and lifted weights share suffixes.
class ValueEngine {
 public:
  ValueEngine(std::shared_ptr<const AuxiliaryGame> game, EngineConfig config = {});

  const AuxiliaryGame& game() const { return *game_; }
  std::shared_ptr<const AuxiliaryGame> game_ptr() const { return game_; }
  const EngineConfig& config() const { return config_; }
  double delta() const { return delta_; }
  std::shared_ptr<const SimplexLattice> lattice() const { return lattice_; }

  std::shared_ptr<const ValueGrid> theta_grid(const ThetaWeights& theta);
  std::shared_ptr<const ValueGrid> v_n(std::size_t n);
  std::shared_ptr<const ValueGrid> v_mn(std::size_t m, std::size_t n);
  std::size_t cache_size() const;

 private:
  std::shared_ptr<const AuxiliaryGame> game_;
  EngineConfig config_;
  double delta_;
  std::shared_ptr<const SimplexLattice> lattice_;
  mutable std::mutex mu_;
  std::map<std::vector<std::int64_t>, std::shared_ptr<const ValueGrid>> cache_;

  std::shared_ptr<const ValueGrid> step(const ThetaWeights& theta, std::shared_ptr<const ValueGrid> next) const;
};

std::shared_ptr<const ValueGrid> value_theta_grid(std::shared_ptr<const AuxiliaryGame> game,
                                                  const ThetaWeights& theta, double delta);
std::shared_ptr<const ValueGrid> value_mn(std::shared_ptr<const AuxiliaryGame> game, std::size_t m, std::size_t n,
                                          double delta);

struct GridAudit {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double worst = 0.0;  // largest excess over the allowed slack
};

// Midpoint test: upper((p+q)/2) >= (lower(p)+lower(q))/2 - 2 delta on lattice pairs
// whose midpoint is a lattice point.
GridAudit audit_concavity(const ValueGrid& grid);
// lower(p) - upper(q) <= |p-q|_1 on all lattice pairs.
GridAudit audit_lipschitz(const ValueGrid& grid);

}  // namespace rgs
