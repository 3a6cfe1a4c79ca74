#include "rgs/zerosum.hpp"

#include <cmath>
#include <numeric>

#include "rgs/error.hpp"

namespace rgs {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init) {
  rows = init.size();
  cols = rows ? init.begin()->size() : 0;
  data.reserve(rows * cols);
  for (const auto& r : init) {
    if (r.size() != cols) fail_precondition("Matrix: ragged initializer");
    data.insert(data.end(), r.begin(), r.end());
  }
}

MatrixGameSolution matrix_game_value(const Matrix& m) {
  if (m.rows == 0 || m.cols == 0) fail_precondition("matrix_game_value: empty matrix");
  // max v  s.t.  sum_i x_i M_ij >= v,  sum x = 1.
  const std::size_t nv = m.rows + 1;
  const std::size_t v = m.rows;
  lp::Problem p(nv, lp::Sense::Maximize);
  p.set_objective(v, 1.0);
  p.set_free(v);
  std::vector<double> row(nv);
  for (std::size_t j = 0; j < m.cols; ++j) {
    for (std::size_t i = 0; i < m.rows; ++i) row[i] = m(i, j);
    row[v] = -1.0;
    p.add_row(row, lp::RowType::GreaterEq, 0.0);
  }
  std::fill(row.begin(), row.end(), 1.0);
  row[v] = 0.0;
  p.add_row(row, lp::RowType::Equal, 1.0);

  const lp::Solution s = lp::solve(p);
  if (!s.optimal()) throw NumericalError("matrix_game_value: LP not optimal");
  MatrixGameSolution out;
  out.value = s.primal[v];
  out.row_strategy.assign(s.primal.begin(), s.primal.begin() + static_cast<long>(m.rows));
  out.col_strategy.resize(m.cols);
  for (std::size_t j = 0; j < m.cols; ++j) out.col_strategy[j] = std::max(0.0, -s.dual[j]);
  for (auto* vec : {&out.row_strategy, &out.col_strategy}) {
    for (double& x : *vec) x = std::max(0.0, x);
    const double t = std::accumulate(vec->begin(), vec->end(), 0.0);
    for (double& x : *vec) x /= t;
  }
  return out;
}

TransportSolution transport_lp(const Matrix& cost, const std::vector<double>& supply,
                               const std::vector<double>& demand) {
  if (cost.rows != supply.size() || cost.cols != demand.size())
    fail_precondition("transport_lp: dimension mismatch");
  const double ms = std::accumulate(supply.begin(), supply.end(), 0.0);
  const double md = std::accumulate(demand.begin(), demand.end(), 0.0);
  if (std::fabs(ms - md) > 1e-9) fail_precondition("transport_lp: supply and demand mass differ");

  const std::size_t n = cost.rows, k = cost.cols;
  lp::Problem p(n * k, lp::Sense::Minimize);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) p.set_objective(i * k + j, cost(i, j));
  std::vector<lp::Entry> e;
  for (std::size_t i = 0; i < n; ++i) {
    e.clear();
    for (std::size_t j = 0; j < k; ++j) e.push_back({i * k + j, 1.0});
    p.add_row(e, lp::RowType::Equal, supply[i]);
  }
  // The last demand row is implied by the others; it is kept and dropped as redundant.
  for (std::size_t j = 0; j < k; ++j) {
    e.clear();
    for (std::size_t i = 0; i < n; ++i) e.push_back({i * k + j, 1.0});
    p.add_row(e, lp::RowType::Equal, demand[j]);
  }
  TransportSolution out;
  out.lp = lp::solve(p);
  if (!out.lp.optimal()) throw NumericalError("transport_lp: LP not optimal");
  out.cost = out.lp.objective;
  out.plan = Matrix(n, k);
  for (std::size_t i = 0; i < n * k; ++i) out.plan.data[i] = std::max(0.0, out.lp.primal[i]);
  return out;
}

FeasibilityResult feasibility(const lp::Problem& constraints) {
  lp::Problem p = constraints;
  for (std::size_t j = 0; j < p.num_vars(); ++j) p.set_objective(j, 0.0);
  const lp::Solution s = lp::solve(p);
  FeasibilityResult out;
  out.feasible = s.status == lp::Status::Optimal;
  if (out.feasible) {
    out.point = s.primal;
    if (out.point.empty()) out.point.assign(p.num_vars(), 0.0);
  } else {
    out.farkas = s.farkas;
  }
  return out;
}

}  // namespace rgs
