#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgs/value_grid.hpp"

namespace rgs {

struct WOptions {
  std::size_t max_n = 4;               // guard
  std::size_t theta_resolution = 4;    // lattice over Delta({1..n}) with spacing 1/R per coordinate
  std::size_t refine_rounds = 3;
};

struct WResult {
  Bounds bounds;             // upper: certified; lower: heuristic (see slack)
  double heuristic_slack = 0.0;
  ThetaWeights theta_star;   // on {1..n}
  std::size_t evaluated = 0;
};

// w_{m,n}(u) = inf over theta in Delta({1..n}) of v_[theta^{m,n}](u)
WResult w_mn(ValueEngine& engine, std::size_t m, std::size_t n, const BeliefMeasure& u, const WOptions& options = {});

struct UniformOptions {
  bool with_w = true;
  WOptions w;
};

struct UniformValueReport {
  std::size_t max_m = 0, max_n = 0;
  double delta = 0.0;
  std::size_t theta_resolution = 0;     // 0 when the w table was skipped
  std::vector<std::vector<Bounds>> v;   // v[m][n-1]
  std::vector<std::vector<WResult>> w;  // w[m][n-1], n <= w guard
  Bounds infsup, supinf;                // over the v table
  Bounds w_infsup, w_supinf;            // over the w table (lower sides heuristic)
  double slack = 0.0;                   // largest certificate gap in the v table
  double estimate = 0.0;                // midpoint of supinf and infsup
  bool infsup_still_decreasing = false; // at n = N
  bool supinf_still_increasing = false; // at m = M
  double seconds = 0.0;

  // smallest interval containing both inf-sup and sup-inf bounds
  Bounds bracket() const;
};

UniformValueReport uniform_value_estimate(ValueEngine& engine, const BeliefMeasure& u, std::size_t max_m,
                                          std::size_t max_n, const UniformOptions& options = {});

std::string uniform_report_csv(const UniformValueReport& r);
nlohmann::json uniform_report_json(const UniformValueReport& r);

}  // namespace rgs
