#include "rgs/uniform.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "rgs/error.hpp"

namespace rgs {

WResult w_mn(ValueEngine& engine, std::size_t m, std::size_t n, const BeliefMeasure& u, const WOptions& opt) {
  if (n == 0) fail_precondition("w_mn: n must be positive");
  if (n > opt.max_n) throw GuardError("w_mn: n = " + std::to_string(n) + " exceeds the guard " + std::to_string(opt.max_n));

  WResult out;
  double best_upper = INFINITY, best_lower = INFINITY;
  std::vector<double> best_theta;
  auto try_theta = [&](const std::vector<double>& t) {
    const ThetaWeights theta(t);
    const Bounds b = evaluate_measure(*engine.theta_grid(theta_lift(theta, m)), u);
    ++out.evaluated;
    best_lower = std::min(best_lower, b.lower);
    if (b.upper < best_upper) {
      best_upper = b.upper;
      best_theta = t;
    }
    return b.upper;
  };

  if (n == 1) {
    try_theta({1.0});
    out.bounds = {best_lower, best_upper};
    out.theta_star = ThetaWeights({1.0});
    return out;
  }

  const SimplexLattice lat(n, opt.theta_resolution);
  std::vector<double> uppers(lat.size());
  for (std::size_t g = 0; g < lat.size(); ++g) uppers[g] = try_theta(lat.point(g));

  // heuristic slack: largest change of the bound between neighbouring lattice weights
  double slack = 0.0;
  for (std::size_t g = 0; g < lat.size(); ++g)
    for (std::size_t h = g + 1; h < lat.size(); ++h)
      if (l1_distance(lat.point(g), lat.point(h)) <= 2.0 / static_cast<double>(opt.theta_resolution) + 1e-12)
        slack = std::max(slack, std::fabs(uppers[g] - uppers[h]));

  // pairwise mass transfers around the incumbent with halving steps
  double step = 1.0 / static_cast<double>(opt.theta_resolution);
  for (std::size_t round = 0; round < opt.refine_rounds; ++round) {
    step /= 2.0;
    bool improved = true;
    while (improved) {
      improved = false;
      const std::vector<double> base = best_theta;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (a == b || base[a] < step) continue;
          std::vector<double> t = base;
          t[a] -= step;
          t[b] += step;
          const double before = best_upper;
          try_theta(t);
          if (best_upper < before - 1e-12) improved = true;
        }
    }
  }
  out.heuristic_slack = slack / 2.0;
  out.bounds = {best_lower - out.heuristic_slack, best_upper};
  out.theta_star = ThetaWeights(best_theta);
  return out;
}

Bounds UniformValueReport::bracket() const {
  return {std::min(infsup.lower, supinf.lower), std::max(infsup.upper, supinf.upper)};
}

namespace {

// min over n of max over m, bound-wise
template <class Cell>
void inf_sup(const std::vector<std::vector<Cell>>& t, Bounds& infsup, Bounds& supinf, Bounds (*get)(const Cell&)) {
  const std::size_t M = t.size(), N = t.empty() ? 0 : t[0].size();
  infsup = {INFINITY, INFINITY};
  for (std::size_t n = 0; n < N; ++n) {
    Bounds mx{-INFINITY, -INFINITY};
    for (std::size_t m = 0; m < M; ++m) {
      mx.lower = std::max(mx.lower, get(t[m][n]).lower);
      mx.upper = std::max(mx.upper, get(t[m][n]).upper);
    }
    infsup.lower = std::min(infsup.lower, mx.lower);
    infsup.upper = std::min(infsup.upper, mx.upper);
  }
  supinf = {-INFINITY, -INFINITY};
  for (std::size_t m = 0; m < M; ++m) {
    Bounds mn{INFINITY, INFINITY};
    for (std::size_t n = 0; n < N; ++n) {
      mn.lower = std::min(mn.lower, get(t[m][n]).lower);
      mn.upper = std::min(mn.upper, get(t[m][n]).upper);
    }
    supinf.lower = std::max(supinf.lower, mn.lower);
    supinf.upper = std::max(supinf.upper, mn.upper);
  }
}

Bounds bounds_of(const Bounds& b) { return b; }
Bounds bounds_of_w(const WResult& w) { return w.bounds; }

}  // namespace

UniformValueReport uniform_value_estimate(ValueEngine& engine, const BeliefMeasure& u, std::size_t max_m,
                                          std::size_t max_n, const UniformOptions& opt) {
  if (max_n == 0) fail_precondition("uniform_value_estimate: max_n must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  UniformValueReport r;
  r.max_m = max_m;
  r.max_n = max_n;
  r.delta = engine.delta();
  r.v.assign(max_m + 1, std::vector<Bounds>(max_n));
  for (std::size_t n = 1; n <= max_n; ++n)
    for (std::size_t m = 0; m <= max_m; ++m) {
      r.v[m][n - 1] = evaluate_measure(*engine.v_mn(m, n), u);
      r.slack = std::max(r.slack, r.v[m][n - 1].gap());
    }
  inf_sup(r.v, r.infsup, r.supinf, &bounds_of);
  r.estimate = 0.5 * (r.infsup.mid() + r.supinf.mid());

  if (max_n >= 2) {
    double last = -INFINITY, prev = -INFINITY;
    for (std::size_t m = 0; m <= max_m; ++m) {
      last = std::max(last, r.v[m][max_n - 1].upper);
      prev = std::max(prev, r.v[m][max_n - 2].lower);
    }
    r.infsup_still_decreasing = last < prev - 1e-9;
  }
  if (max_m >= 1) {
    double last = INFINITY, prev = INFINITY;
    for (std::size_t n = 0; n < max_n; ++n) {
      last = std::min(last, r.v[max_m][n].lower);
      prev = std::min(prev, r.v[max_m - 1][n].upper);
    }
    r.supinf_still_increasing = last > prev + 1e-9;
  }

  if (opt.with_w) {
    r.theta_resolution = opt.w.theta_resolution;
    const std::size_t wn = std::min(max_n, opt.w.max_n);
    r.w.assign(max_m + 1, std::vector<WResult>(wn));
    for (std::size_t m = 0; m <= max_m; ++m)
      for (std::size_t n = 1; n <= wn; ++n) r.w[m][n - 1] = w_mn(engine, m, n, u, opt.w);
    inf_sup(r.w, r.w_infsup, r.w_supinf, &bounds_of_w);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string uniform_report_csv(const UniformValueReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << "m,n,lower,upper\n";
  for (std::size_t m = 0; m <= r.max_m; ++m)
    for (std::size_t n = 1; n <= r.max_n; ++n)
      os << m << ',' << n << ',' << r.v[m][n - 1].lower << ',' << r.v[m][n - 1].upper << '\n';
  return os.str();
}

nlohmann::json uniform_report_json(const UniformValueReport& r) {
  using nlohmann::json;
  auto b = [](const Bounds& x) { return json{{"lower", x.lower}, {"upper", x.upper}}; };
  json cells = json::array();
  for (std::size_t m = 0; m <= r.max_m; ++m)
    for (std::size_t n = 1; n <= r.max_n; ++n)
      cells.push_back({{"m", m}, {"n", n}, {"lower", r.v[m][n - 1].lower}, {"upper", r.v[m][n - 1].upper}});
  json wcells = json::array();
  for (std::size_t m = 0; m < r.w.size(); ++m)
    for (std::size_t n = 1; n <= r.w[m].size(); ++n) {
      const WResult& w = r.w[m][n - 1];
      wcells.push_back({{"m", m},
                        {"n", n},
                        {"lower", w.bounds.lower},
                        {"upper", w.bounds.upper},
                        {"heuristic_slack", w.heuristic_slack},
                        {"theta_star", w.theta_star.weights()}});
    }
  const Bounds br = r.bracket();
  return json{{"max_m", r.max_m},
              {"max_n", r.max_n},
              {"v", cells},
              {"w", wcells},
              {"infsup", b(r.infsup)},
              {"supinf", b(r.supinf)},
              {"w_infsup", r.w.empty() ? json(nullptr) : b(r.w_infsup)},
              {"w_supinf", r.w.empty() ? json(nullptr) : b(r.w_supinf)},
              {"estimate", r.estimate},
              {"bracket", b(br)},
              {"diagnostics",
               {{"grid_delta", r.delta},
                {"certificate_slack", r.slack},
                {"theta_grid_resolution", r.theta_resolution},
                {"infsup_still_decreasing", r.infsup_still_decreasing},
                {"supinf_still_increasing", r.supinf_still_increasing},
                {"seconds", r.seconds}}}};
}

}  // namespace rgs
