#pragma once

#include <cstddef>
#include <vector>

#include "rgs/lp.hpp"

namespace rgs {

// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> init);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> row_strategy;  // maximizer
  std::vector<double> col_strategy;  // minimizer
};

MatrixGameSolution matrix_game_value(const Matrix& m);

struct TransportSolution {
  double cost = 0.0;
  Matrix plan;  // supply x demand
  lp::Solution lp;
};

// Supplies and demands must carry equal mass (within 1e-9).
TransportSolution transport_lp(const Matrix& cost, const std::vector<double>& supply,
                               const std::vector<double>& demand);

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> point;
  std::vector<double> farkas;  // see lp::Solution::farkas
};

// Objective of the problem is ignored.
FeasibilityResult feasibility(const lp::Problem& constraints);

}  // namespace rgs
