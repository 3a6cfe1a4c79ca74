#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rgs {

// A point of the simplex over states.
using Belief = std::vector<double>;
// A mixed action over a finite action set.
using Mixed = std::vector<double>;

// One mixed action over I per state k, stored row-major (k, i).
class StackedMixed {
 public:
  StackedMixed() = default;
  StackedMixed(std::size_t states, std::size_t actions);
  StackedMixed(std::size_t states, std::size_t actions, std::vector<double> data);

  static StackedMixed uniform(std::size_t states, std::size_t actions);
  // Every state plays the same mixed action.
  static StackedMixed constant(std::size_t states, const Mixed& a);

  std::size_t states() const { return k_; }
  std::size_t actions() const { return i_; }
  double operator()(std::size_t k, std::size_t i) const { return data_[k * i_ + i]; }
  double& operator()(std::size_t k, std::size_t i) { return data_[k * i_ + i]; }
  std::span<const double> row(std::size_t k) const { return {data_.data() + k * i_, i_}; }
  const std::vector<double>& data() const { return data_; }

  // Largest deviation from the product of simplices.
  double simplex_violation() const;
  // Throws ValidationError when the deviation exceeds tol.
  void validate(double tol = 1e-12) const;

 private:
  std::size_t k_ = 0;
  std::size_t i_ = 0;
  std::vector<double> data_;
};

double l1_distance(std::span<const double> a, std::span<const double> b);
double simplex_violation(std::span<const double> p);
// Clamp tiny negatives and renormalize; throws when off the simplex by more than tol.
void normalize_simplex(std::vector<double>& p, double tol, const char* what);

}  // namespace rgs
