#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rgs/tolerances.hpp"

namespace rgs::lp {

enum class Sense { Maximize, Minimize };
enum class RowType { LessEq, GreaterEq, Equal };
enum class Status { Optimal, Infeasible, Unbounded };
enum class PivotRule { Hybrid, Bland };

const char* to_string(Status s);

struct Entry {
  std::size_t col;
  double value;
};

// Variables are nonnegative unless marked free.
class Problem {
 public:
  Problem(std::size_t num_vars, Sense sense);

  std::size_t num_vars() const { return n_; }
  std::size_t num_rows() const { return types_.size(); }
  Sense sense() const { return sense_; }

  void set_objective(std::size_t j, double c);
  void set_free(std::size_t j, bool free = true);
  std::size_t add_row(std::span<const double> dense, RowType type, double rhs);
  std::size_t add_row(std::span<const Entry> sparse, RowType type, double rhs);
  std::size_t add_row(std::initializer_list<Entry> sparse, RowType type, double rhs);
  void set_rhs(std::size_t row, double rhs);

  double objective(std::size_t j) const { return c_[j]; }
  bool is_free(std::size_t j) const { return free_[j] != 0; }
  double coeff(std::size_t r, std::size_t j) const { return a_[r * n_ + j]; }
  const double* row(std::size_t r) const { return a_.data() + r * n_; }
  RowType row_type(std::size_t r) const { return types_[r]; }
  double rhs(std::size_t r) const { return b_[r]; }

 private:
  std::size_t n_;
  Sense sense_;
  std::vector<double> c_;
  std::vector<char> free_;
  std::vector<double> a_;  // row major, num_rows x n
  std::vector<RowType> types_;
  std::vector<double> b_;
};

struct Options {
  PivotRule rule = PivotRule::Hybrid;
  std::size_t max_iterations = 200000;
  std::size_t degenerate_streak = 50;  // Hybrid: switch to Bland after this many
  double feasibility_tol = kTol.feasibility;
  double pivot_tol = kTol.pivot;
  double optimality_tol = 1e-10;
};

struct Diagnostics {
  std::size_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = 0.0;
  double min_pivot_ratio = 1.0;  // smallest |pivot| / max |column| seen in the final factorization
  bool used_bland = false;
};

// dual[r] is the shadow price d(objective)/d(rhs_r) for both senses.
// farkas (when infeasible): y with y_r >= 0 on <= rows, y_r <= 0 on >= rows,
// A^T y >= 0 on nonnegative columns, = 0 on free ones, and y.b < 0.
// ray (when unbounded): direction d with A d (sense) 0 and c.d improving.
struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> primal;
  std::vector<double> dual;
  std::vector<double> farkas;
  std::vector<double> ray;
  Diagnostics diag;

  bool optimal() const { return status == Status::Optimal; }
};

Solution solve(const Problem& problem, const Options& options = {});

// Residual checks against the original data; useful in tests.
double primal_violation(const Problem& problem, std::span<const double> x);
double farkas_violation(const Problem& problem, std::span<const double> y);

}  // namespace rgs::lp
