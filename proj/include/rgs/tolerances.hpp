#pragma once

namespace rgs {

struct Tolerances {
  double structural = 1e-12;   // exact identities, atom merging
  double table = 1e-9;         // user supplied probability tables
  double feasibility = 1e-9;   // LP primal / dual residuals
  double pivot = 1e-11;        // smallest admissible simplex pivot
  double barycenter = 1e-9;    // splitting / coupling barycenter checks
};

inline constexpr Tolerances kTol{};

}  // namespace rgs
