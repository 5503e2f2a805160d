#pragma once

#include <Eigen/Core>
#include <vector>

#include "fpcr/grid_function.hpp"

namespace fpcr {

/// Empirical distribution of a scalar statistic.
struct ScalarSample {
  Eigen::VectorXd values;

  explicit ScalarSample(Eigen::VectorXd values_in);
  Eigen::Index size() const { return values.size(); }
};

/// Empirical distribution of a function-valued statistic on a common grid.
struct FunctionSample {
  std::vector<GridFunction> functions;
  Space space;

  FunctionSample(std::vector<GridFunction> functions_in, Space space_in);
  Eigen::Index size() const { return static_cast<Eigen::Index>(functions.size()); }
};

/// Exact 2-Wasserstein distance between equal-size scalar samples: the
/// optimal coupling in one dimension pairs order statistics.
double wasserstein2_1d(const ScalarSample& a, const ScalarSample& b);

/// Exact 2-Wasserstein distance between equal-size samples of grid
/// functions, computed as a minimum-cost perfect matching on the matrix of
/// squared distances in the tagged space. Limited to N <= 512, where the
/// O(N^3) exact solver is affordable.
double wasserstein2_hilbert(const FunctionSample& a, const FunctionSample& b);

/// Supremum distance between the right-continuous empirical CDFs; sample
/// sizes may differ.
double kolmogorov_distance(const ScalarSample& a, const ScalarSample& b);

/// Minimum cost of a perfect matching of rows to columns of a square cost
/// matrix (Hungarian algorithm with potentials).
double assignment_min_cost(const Eigen::MatrixXd& cost);

}  // namespace fpcr
