#include "rgs/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgs/error.hpp"

namespace rgs {

StackedMixed::StackedMixed(std::size_t states, std::size_t actions)
    : k_(states), i_(actions), data_(states * actions, 0.0) {}

StackedMixed::StackedMixed(std::size_t states, std::size_t actions, std::vector<double> data)
    : k_(states), i_(actions), data_(std::move(data)) {
  if (data_.size() != k_ * i_) fail_precondition("StackedMixed: data size mismatch");
}

StackedMixed StackedMixed::uniform(std::size_t states, std::size_t actions) {
  return StackedMixed(states, actions, std::vector<double>(states * actions, 1.0 / static_cast<double>(actions)));
}

StackedMixed StackedMixed::constant(std::size_t states, const Mixed& a) {
  StackedMixed s(states, a.size());
  for (std::size_t k = 0; k < states; ++k)
    for (std::size_t i = 0; i < a.size(); ++i) s(k, i) = a[i];
  return s;
}

double StackedMixed::simplex_violation() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < k_; ++k) worst = std::max(worst, rgs::simplex_violation(row(k)));
  return worst;
}

void StackedMixed::validate(double tol) const {
  const double v = simplex_violation();
  if (!(v <= tol)) throw ValidationError("stacked mixed action off the simplex by " + std::to_string(v));
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::fabs(a[k] - b[k]);
  return s;
}

double simplex_violation(std::span<const double> p) {
  double sum = 0.0, neg = 0.0;
  for (double x : p) {
    if (!std::isfinite(x)) return INFINITY;
    sum += x;
    neg = std::max(neg, -x);
  }
  return std::max(neg, std::fabs(sum - 1.0));
}

void normalize_simplex(std::vector<double>& p, double tol, const char* what) {
  const double v = simplex_violation(p);
  if (!(v <= tol)) throw ValidationError(std::string(what) + ": not a probability vector (deviation " + std::to_string(v) + ")");
  double s = 0.0;
  for (double& x : p) {
    x = std::max(0.0, x);
    s += x;
  }
  for (double& x : p) x /= s;
}

}  // namespace rgs
