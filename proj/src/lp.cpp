#include "rgs/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rgs/error.hpp"

namespace rgs::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "?";
}

Problem::Problem(std::size_t num_vars, Sense sense)
    : n_(num_vars), sense_(sense), c_(num_vars, 0.0), free_(num_vars, 0) {}

void Problem::set_objective(std::size_t j, double c) { c_.at(j) = c; }
void Problem::set_free(std::size_t j, bool free) { free_.at(j) = free ? 1 : 0; }

std::size_t Problem::add_row(std::span<const double> dense, RowType type, double rhs) {
  if (dense.size() != n_) fail_precondition("lp: dense row has wrong length");
  a_.insert(a_.end(), dense.begin(), dense.end());
  types_.push_back(type);
  b_.push_back(rhs);
  return types_.size() - 1;
}

std::size_t Problem::add_row(std::span<const Entry> sparse, RowType type, double rhs) {
  const std::size_t base = a_.size();
  a_.resize(base + n_, 0.0);
  for (const Entry& e : sparse) {
    if (e.col >= n_) fail_precondition("lp: sparse entry out of range");
    a_[base + e.col] += e.value;
  }
  types_.push_back(type);
  b_.push_back(rhs);
  return types_.size() - 1;
}

std::size_t Problem::add_row(std::initializer_list<Entry> sparse, RowType type, double rhs) {
  return add_row(std::span<const Entry>(sparse.begin(), sparse.size()), type, rhs);
}

void Problem::set_rhs(std::size_t row, double rhs) { b_.at(row) = rhs; }

double primal_violation(const Problem& p, std::span<const double> x) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.num_vars(); ++j)
    if (!p.is_free(j)) worst = std::max(worst, -x[j]);
  for (std::size_t r = 0; r < p.num_rows(); ++r) {
    const double* a = p.row(r);
    double s = 0.0;
    for (std::size_t j = 0; j < p.num_vars(); ++j) s += a[j] * x[j];
    const double d = s - p.rhs(r);
    switch (p.row_type(r)) {
      case RowType::LessEq: worst = std::max(worst, d); break;
      case RowType::GreaterEq: worst = std::max(worst, -d); break;
      case RowType::Equal: worst = std::max(worst, std::fabs(d)); break;
    }
  }
  return worst;
}

double farkas_violation(const Problem& p, std::span<const double> y) {
  double worst = 0.0;
  for (std::size_t r = 0; r < p.num_rows(); ++r) {
    if (p.row_type(r) == RowType::LessEq) worst = std::max(worst, -y[r]);
    if (p.row_type(r) == RowType::GreaterEq) worst = std::max(worst, y[r]);
  }
  for (std::size_t j = 0; j < p.num_vars(); ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < p.num_rows(); ++r) s += p.coeff(r, j) * y[r];
    worst = std::max(worst, p.is_free(j) ? std::fabs(s) : -s);
  }
  return worst;
}

namespace {

// P B = L U with partial pivoting on a dense square matrix.
struct DenseLU {
  std::size_t m = 0;
  std::vector<double> lu;
  std::vector<std::size_t> perm;
  double min_piv = 0.0, max_piv = 0.0;

  // False when a pivot is exactly zero.
  bool factor(std::vector<double> B, std::size_t n) {
    m = n;
    lu = std::move(B);
    perm.resize(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    max_piv = 0.0;
    min_piv = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t piv = k;
      double big = std::fabs(lu[k * m + k]);
      for (std::size_t i = k + 1; i < m; ++i) {
        const double v = std::fabs(lu[i * m + k]);
        if (v > big) {
          big = v;
          piv = i;
        }
      }
      if (piv != k) {
        for (std::size_t c = 0; c < m; ++c) std::swap(lu[k * m + c], lu[piv * m + c]);
        std::swap(perm[k], perm[piv]);
      }
      max_piv = std::max(max_piv, big);
      min_piv = std::min(min_piv, big);
      if (big == 0.0) return false;
      for (std::size_t i = k + 1; i < m; ++i) {
        const double f = lu[i * m + k] / lu[k * m + k];
        lu[i * m + k] = f;
        if (f == 0.0) continue;
        for (std::size_t c = k + 1; c < m; ++c) lu[i * m + c] -= f * lu[k * m + c];
      }
    }
    return true;
  }

  double ratio() const { return max_piv > 0.0 ? min_piv / max_piv : 0.0; }

  // B x = b
  std::vector<double> solve(const std::vector<double>& b) const {
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = b[perm[i]];
      for (std::size_t c = 0; c < i; ++c) s -= lu[i * m + c] * z[c];
      z[i] = s;
    }
    for (std::size_t i = m; i-- > 0;) {
      double s = z[i];
      for (std::size_t c = i + 1; c < m; ++c) s -= lu[i * m + c] * z[c];
      z[i] = s / lu[i * m + i];
    }
    return z;
  }

  // B^T y = c  ->  U^T L^T P y = c
  std::vector<double> solve_transposed(const std::vector<double>& c) const {
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = c[i];
      for (std::size_t k = 0; k < i; ++k) s -= lu[k * m + i] * v[k];
      v[i] = s / lu[i * m + i];
    }
    for (std::size_t i = m; i-- > 0;) {
      double s = v[i];
      for (std::size_t k = i + 1; k < m; ++k) s -= lu[k * m + i] * v[k];
      v[i] = s;
    }
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) y[perm[i]] = v[i];
    return y;
  }
};

// Dense tableau over the standard form A' x = b', x >= 0, b' >= 0, with one
// artificial column per row kept for the whole solve so that B^-1 stays readable.
class Tableau {
 public:
  Tableau(const Problem& p, const Options& o) : p_(p), o_(o) { build(); }

  Solution run();

 private:
  const Problem& p_;
  const Options& o_;

  std::size_t m_ = 0;        // rows
  std::size_t ns_ = 0;       // structural columns (vars, splits, slacks)
  std::size_t w_ = 0;        // tableau width = ns + m + 1
  std::vector<std::size_t> pos_, neg_;  // column of x_j+ and x_j- (neg_ = npos when not free)
  std::vector<std::size_t> slack_;      // slack column per row (npos for equalities)
  struct ColumnOrigin {
    std::size_t var;
    double sign;
    std::size_t slack_row;
  };
  std::vector<ColumnOrigin> origin_;
  std::vector<double> sigma_;           // row sign flip applied so that b' >= 0
  std::vector<double> cost_;            // internal maximization costs over structural columns
  std::vector<double> t_;               // (m+1) x w, last row = reduced costs, last col = rhs
  std::vector<std::size_t> basis_;
  std::vector<char> redundant_;
  std::size_t iterations_ = 0;
  bool used_bland_ = false;
  const std::vector<double>* phase_cost_ = nullptr;  // objective of the running phase

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kReinvertEvery = 64;

  double& at(std::size_t r, std::size_t c) { return t_[r * w_ + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * w_ + c]; }
  double std_coeff(std::size_t r, std::size_t col) const;

  void build();
  void pivot(std::size_t r, std::size_t q);
  void set_objective_row(const std::vector<double>& c_full);
  // Returns Optimal or Unbounded (entering column in *unbounded_col).
  Status iterate(bool allow_artificial, std::size_t* unbounded_col);
  void drive_out_artificials();
  // Dual simplex pivots on a dual-feasible basis until no basic value is below -tol.
  bool repair_primal();
  // Rebuild the tableau for the current basis from the original data.
  void reinvert();
  std::vector<double> basic_costs(const std::vector<double>& c_full) const;
  void refine(std::vector<double>& xb, std::vector<double>& y, const std::vector<double>& c_full,
              Diagnostics& diag) const;
  std::vector<double> original_primal(const std::vector<double>& x_std) const;
};

double Tableau::std_coeff(std::size_t r, std::size_t col) const {
  // Column of the sign-flipped standard-form matrix, used for refinement.
  if (col >= ns_) return (col - ns_ == r) ? 1.0 : 0.0;
  const ColumnOrigin& o = origin_[col];
  if (o.var != npos) return o.sign * sigma_[r] * p_.coeff(r, o.var);
  if (o.slack_row != r) return 0.0;
  return sigma_[r] * (p_.row_type(r) == RowType::LessEq ? 1.0 : -1.0);
}

void Tableau::build() {
  m_ = p_.num_rows();
  const std::size_t n = p_.num_vars();
  pos_.assign(n, npos);
  neg_.assign(n, npos);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_[j] = col++;
    if (p_.is_free(j)) neg_[j] = col++;
  }
  slack_.assign(m_, npos);
  for (std::size_t r = 0; r < m_; ++r)
    if (p_.row_type(r) != RowType::Equal) slack_[r] = col++;
  ns_ = col;
  w_ = ns_ + m_ + 1;
  origin_.assign(ns_, ColumnOrigin{npos, 0.0, npos});
  for (std::size_t j = 0; j < n; ++j) {
    origin_[pos_[j]] = {j, 1.0, npos};
    if (neg_[j] != npos) origin_[neg_[j]] = {j, -1.0, npos};
  }
  for (std::size_t r = 0; r < m_; ++r)
    if (slack_[r] != npos) origin_[slack_[r]] = {npos, 0.0, r};

  const double dir = p_.sense() == Sense::Maximize ? 1.0 : -1.0;
  cost_.assign(ns_, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost_[pos_[j]] = dir * p_.objective(j);
    if (neg_[j] != npos) cost_[neg_[j]] = -dir * p_.objective(j);
  }

  sigma_.assign(m_, 1.0);
  t_.assign((m_ + 1) * w_, 0.0);
  basis_.resize(m_);
  redundant_.assign(m_, 0);
  for (std::size_t r = 0; r < m_; ++r) {
    const double s = p_.rhs(r) < 0.0 ? -1.0 : 1.0;
    sigma_[r] = s;
    const double* a = p_.row(r);
    for (std::size_t j = 0; j < n; ++j) {
      at(r, pos_[j]) = s * a[j];
      if (neg_[j] != npos) at(r, neg_[j]) = -s * a[j];
    }
    if (slack_[r] != npos) at(r, slack_[r]) = s * (p_.row_type(r) == RowType::LessEq ? 1.0 : -1.0);
    at(r, ns_ + r) = 1.0;
    at(r, w_ - 1) = s * p_.rhs(r);
    basis_[r] = ns_ + r;
  }
}

void Tableau::pivot(std::size_t r, std::size_t q) {
  const double piv = at(r, q);
  double* pr = &t_[r * w_];
  const double inv = 1.0 / piv;
  for (std::size_t c = 0; c < w_; ++c) pr[c] *= inv;
  pr[q] = 1.0;
  for (std::size_t s = 0; s <= m_; ++s) {
    if (s == r) continue;
    double* ps = &t_[s * w_];
    const double f = ps[q];
    if (f == 0.0) continue;
    for (std::size_t c = 0; c < w_; ++c) ps[c] -= f * pr[c];
    ps[q] = 0.0;
  }
  basis_[r] = q;
  ++iterations_;
}

std::vector<double> Tableau::basic_costs(const std::vector<double>& c_full) const {
  std::vector<double> cb(m_);
  for (std::size_t r = 0; r < m_; ++r) cb[r] = c_full[basis_[r]];
  return cb;
}

void Tableau::set_objective_row(const std::vector<double>& c_full) {
  const std::vector<double> cb = basic_costs(c_full);
  double* obj = &t_[m_ * w_];
  for (std::size_t c = 0; c + 1 < w_; ++c) {
    double s = c_full[c];
    for (std::size_t r = 0; r < m_; ++r) s -= cb[r] * at(r, c);
    obj[c] = s;
  }
  double z = 0.0;
  for (std::size_t r = 0; r < m_; ++r) z += cb[r] * at(r, w_ - 1);
  obj[w_ - 1] = -z;
  for (std::size_t r = 0; r < m_; ++r) obj[basis_[r]] = 0.0;
}

Status Tableau::iterate(bool allow_artificial, std::size_t* unbounded_col) {
  const std::size_t last = allow_artificial ? ns_ + m_ : ns_;
  bool bland = o_.rule == PivotRule::Bland;
  std::size_t degenerate = 0;
  const double* obj = &t_[m_ * w_];
  // columns whose only positive entries are too small to pivot on this round
  std::vector<char> rejected(last, 0);
  while (true) {
    if (iterations_ >= o_.max_iterations) {
      throw NumericalError("lp: iteration limit reached (" + std::to_string(iterations_) + ")");
    }
    std::size_t q = npos;
    double best = o_.optimality_tol;
    for (std::size_t c = 0; c < last; ++c) {
      if (obj[c] > best && !rejected[c]) {
        q = c;
        if (bland) break;
        best = obj[c];
      }
    }
    if (q == npos) return Status::Optimal;

    // Harris two-pass ratio test: bound the step with a small feasibility
    // allowance, then take the largest pivot among the rows under the bound.
    double colmax = 0.0;
    for (std::size_t r = 0; r < m_; ++r) colmax = std::max(colmax, std::fabs(at(r, q)));
    const double admissible = std::max(o_.pivot_tol, 1e-7 * colmax);
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m_; ++r) {
      const double a = at(r, q);
      if (a <= admissible) continue;
      bound = std::min(bound, (std::max(0.0, at(r, w_ - 1)) + o_.feasibility_tol) / a);
    }
    std::size_t r_out = npos;
    double ratio = 0.0, amax = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double a = at(r, q);
      if (a <= admissible) continue;
      const double rr = std::max(0.0, at(r, w_ - 1)) / a;
      if (rr <= bound && a > amax) amax = a;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const double a = at(r, q);
      if (a <= admissible) continue;
      const double rr = std::max(0.0, at(r, w_ - 1)) / a;
      if (rr > bound) continue;
      bool take;
      if (r_out == npos) take = bland ? a >= 0.1 * amax : true;
      else if (bland) take = a >= 0.1 * amax && basis_[r] < basis_[r_out];
      else take = a > at(r_out, q);
      if (take) {
        r_out = r;
        ratio = rr;
      }
    }
    if (r_out == npos) {
      double top = 0.0;
      for (std::size_t r = 0; r < m_; ++r) top = std::max(top, at(r, q));
      if (top > o_.pivot_tol) {
        rejected[q] = 1;
        continue;
      }
      *unbounded_col = q;
      return Status::Unbounded;
    }
    if (ratio <= 1e-14) {
      if (++degenerate > o_.degenerate_streak && !bland) {
        bland = true;
        used_bland_ = true;
      }
    } else {
      degenerate = 0;
    }
    pivot(r_out, q);
    std::fill(rejected.begin(), rejected.end(), 0);
    if (iterations_ % std::max(kReinvertEvery, m_) == 0) reinvert();
    for (std::size_t r = 0; r < m_; ++r)
      if (at(r, w_ - 1) < 0.0 && at(r, w_ - 1) > -o_.feasibility_tol) at(r, w_ - 1) = 0.0;
  }
}

void Tableau::reinvert() {
  if (m_ == 0 || phase_cost_ == nullptr) return;
  std::vector<double> B(m_ * m_);
  for (std::size_t r = 0; r < m_; ++r)
    for (std::size_t k = 0; k < m_; ++k) B[r * m_ + k] = std_coeff(r, basis_[k]);
  DenseLU f;
  if (!f.factor(std::move(B), m_) || f.ratio() < 1e-14) return;  // keep the updated tableau
  std::vector<double> col(m_);
  for (std::size_t c = 0; c + 1 < w_; ++c) {
    for (std::size_t r = 0; r < m_; ++r) col[r] = std_coeff(r, c);
    const std::vector<double> z = f.solve(col);
    for (std::size_t r = 0; r < m_; ++r) at(r, c) = z[r];
  }
  for (std::size_t r = 0; r < m_; ++r) col[r] = sigma_[r] * p_.rhs(r);
  const std::vector<double> z = f.solve(col);
  for (std::size_t r = 0; r < m_; ++r) at(r, w_ - 1) = z[r];
  for (std::size_t k = 0; k < m_; ++k)
    for (std::size_t r = 0; r < m_; ++r) at(r, basis_[k]) = r == k ? 1.0 : 0.0;
  set_objective_row(*phase_cost_);
}

bool Tableau::repair_primal() {
  reinvert();
  const double* obj = &t_[m_ * w_];
  for (std::size_t pass = 0; pass < 4 * m_ + 16; ++pass) {
    std::size_t r = npos;
    double worst = -o_.feasibility_tol;
    for (std::size_t k = 0; k < m_; ++k)
      if (at(k, w_ - 1) < worst) {
        worst = at(k, w_ - 1);
        r = k;
      }
    if (r == npos) return true;
    double rowmax = 0.0;
    for (std::size_t c = 0; c < ns_; ++c) rowmax = std::max(rowmax, std::fabs(at(r, c)));
    const double admissible = std::max(o_.pivot_tol, 1e-7 * rowmax);
    std::size_t q = npos;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < ns_; ++c) {
      const double a = at(r, c);
      if (a >= -admissible) continue;
      const double ratio = std::min(0.0, obj[c]) / a;
      if (ratio < best || (ratio == best && a < at(r, q))) {
        best = ratio;
        q = c;
      }
    }
    if (q == npos) return false;
    pivot(r, q);
  }
  return false;
}

void Tableau::drive_out_artificials() {
  for (std::size_t r = 0; r < m_; ++r) {
    if (basis_[r] < ns_) continue;
    std::size_t q = npos;
    double best = o_.pivot_tol * 100.0;
    for (std::size_t c = 0; c < ns_; ++c) {
      const double a = std::fabs(at(r, c));
      if (a > best) {
        best = a;
        q = c;
      }
    }
    if (q == npos) {
      redundant_[r] = 1;
    } else {
      at(r, w_ - 1) = 0.0;
      pivot(r, q);
    }
  }
}

// Re-solve B x_B = b' and B^T y = c_B from the original data with partial pivoting.
void Tableau::refine(std::vector<double>& xb, std::vector<double>& y, const std::vector<double>& c_full,
                     Diagnostics& diag) const {
  const std::size_t m = m_;
  if (m == 0) return;
  std::vector<double> B(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k < m; ++k) B[r * m + k] = std_coeff(r, basis_[k]);
  std::vector<double> bp(m);
  for (std::size_t r = 0; r < m; ++r) bp[r] = sigma_[r] * p_.rhs(r);

  DenseLU f;
  if (!f.factor(std::move(B), m)) {
    std::ostringstream os;
    os << "lp: numerically singular basis (m=" << m << ", iterations=" << iterations_ << ")";
    throw NumericalError(os.str());
  }
  diag.min_pivot_ratio = f.ratio();
  if (diag.min_pivot_ratio < 1e-14) {
    std::ostringstream os;
    os << "lp: numerically singular basis (pivot ratio " << diag.min_pivot_ratio << ", m=" << m << ")";
    throw NumericalError(os.str());
  }
  xb = f.solve(bp);
  std::vector<double> cb(m);
  for (std::size_t k = 0; k < m; ++k) cb[k] = c_full[basis_[k]];
  y = f.solve_transposed(cb);
}

std::vector<double> Tableau::original_primal(const std::vector<double>& x_std) const {
  std::vector<double> x(p_.num_vars(), 0.0);
  for (std::size_t j = 0; j < p_.num_vars(); ++j) {
    x[j] = x_std[pos_[j]];
    if (neg_[j] != npos) x[j] -= x_std[neg_[j]];
  }
  return x;
}

Solution Tableau::run() {
  Solution sol;
  const std::size_t full = ns_ + m_;

  // Phase I: maximize -sum(artificials).
  std::vector<double> c1(full, 0.0);
  for (std::size_t r = 0; r < m_; ++r) c1[ns_ + r] = -1.0;
  set_objective_row(c1);
  phase_cost_ = &c1;
  std::size_t dummy = npos;
  iterate(false, &dummy);  // bounded by construction

  double infeas = 0.0;
  for (std::size_t r = 0; r < m_; ++r)
    if (basis_[r] >= ns_) infeas += std::max(0.0, at(r, w_ - 1));
  double bscale = 1.0;
  for (std::size_t r = 0; r < m_; ++r) bscale = std::max(bscale, std::fabs(p_.rhs(r)));

  if (infeas > o_.feasibility_tol * bscale) {
    sol.status = Status::Infeasible;
    // y' = c1_B B^-1 read from the artificial block.
    std::vector<double> yp(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::size_t k = 0; k < m_; ++k) s += c1[basis_[k]] * at(k, ns_ + r);
      yp[r] = s;
    }
    sol.farkas.resize(m_);
    double scale = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      sol.farkas[r] = sigma_[r] * yp[r];
      scale = std::max(scale, std::fabs(sol.farkas[r]));
    }
    if (scale > 0.0)
      for (double& f : sol.farkas) f /= scale;
    sol.diag.iterations = iterations_;
    sol.diag.used_bland = used_bland_;
    return sol;
  }

  drive_out_artificials();

  std::vector<double> c2(full, 0.0);
  for (std::size_t c = 0; c < ns_; ++c) c2[c] = cost_[c];
  set_objective_row(c2);
  phase_cost_ = &c2;
  std::size_t ucol = npos;
  Status st = iterate(false, &ucol);
  std::vector<double> xb, yp;
  // accumulated drift can leave basics slightly negative; clean up and reoptimize
  for (int round = 0; st == Status::Optimal; ++round) {
    refine(xb, yp, c2, sol.diag);
    double lo = 0.0;
    for (std::size_t r = 0; r < m_; ++r) lo = std::min(lo, xb[r]);
    if (lo >= -o_.feasibility_tol || round == 3) break;
    if (!repair_primal()) {
      refine(xb, yp, c2, sol.diag);
      break;
    }
    bool improving = false;
    for (std::size_t c = 0; c < ns_; ++c) improving = improving || t_[m_ * w_ + c] > o_.optimality_tol;
    if (improving) st = iterate(false, &ucol);
  }
  sol.diag.iterations = iterations_;
  sol.diag.used_bland = used_bland_;

  if (st == Status::Unbounded) {
    sol.status = Status::Unbounded;
    std::vector<double> d(ns_, 0.0);
    d[ucol] = 1.0;
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < ns_) d[basis_[r]] = -at(r, ucol);
    sol.ray = original_primal(d);
    return sol;
  }

  std::vector<double> x_std(ns_, 0.0);
  for (std::size_t r = 0; r < m_; ++r) {
    if (basis_[r] < ns_) {
      double v = xb[r];
      if (v < 0.0 && v > -o_.feasibility_tol) v = 0.0;
      x_std[basis_[r]] = v;
    }
  }
  sol.status = Status::Optimal;
  sol.primal = original_primal(x_std);

  const double dir = p_.sense() == Sense::Maximize ? 1.0 : -1.0;
  sol.dual.resize(m_);
  for (std::size_t r = 0; r < m_; ++r) sol.dual[r] = dir * sigma_[r] * yp[r];

  double obj = 0.0;
  for (std::size_t j = 0; j < p_.num_vars(); ++j) obj += p_.objective(j) * sol.primal[j];
  sol.objective = obj;

  // Diagnostics against the original data.
  sol.diag.primal_residual = primal_violation(p_, sol.primal);
  double dres = 0.0;
  for (std::size_t c = 0; c < ns_; ++c) {
    double s = c2[c];
    for (std::size_t r = 0; r < m_; ++r) s -= yp[r] * std_coeff(r, c);
    dres = std::max(dres, s);
  }
  sol.diag.dual_residual = dres;
  double dobj = 0.0;
  for (std::size_t r = 0; r < m_; ++r) dobj += sol.dual[r] * p_.rhs(r);
  sol.diag.duality_gap = std::fabs(dobj - obj);
  return sol;
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  if (problem.num_rows() == 0) {
    Solution sol;
    const double dir = problem.sense() == Sense::Maximize ? 1.0 : -1.0;
    sol.primal.assign(problem.num_vars(), 0.0);
    for (std::size_t j = 0; j < problem.num_vars(); ++j) {
      const double c = dir * problem.objective(j);
      if (c > 0.0 || (problem.is_free(j) && c != 0.0)) {
        sol.status = Status::Unbounded;
        sol.ray.assign(problem.num_vars(), 0.0);
        sol.ray[j] = c > 0.0 ? 1.0 : -1.0;
        return sol;
      }
    }
    sol.status = Status::Optimal;
    return sol;
  }
  Tableau t(problem, options);
  return t.run();
}

}  // namespace rgs::lp
