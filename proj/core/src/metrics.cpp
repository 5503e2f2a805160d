#include "fpcr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace fpcr {

namespace {

constexpr Eigen::Index kAssignmentSizeLimit = 512;

}  // namespace

ScalarSample::ScalarSample(Eigen::VectorXd values_in) : values(std::move(values_in)) {
  if (values.size() < 1) {
    throw PreconditionError("ScalarSample must be nonempty");
  }
  if (!values.allFinite()) {
    throw PreconditionError("ScalarSample values must all be finite");
  }
}

FunctionSample::FunctionSample(std::vector<GridFunction> functions_in, Space space_in)
    : functions(std::move(functions_in)), space(space_in) {
  if (functions.empty()) {
    throw PreconditionError("FunctionSample must be nonempty");
  }
  const Eigen::Index m = functions.front().grid_size();
  for (const auto& f : functions) {
    if (f.grid_size() != m) {
      throw DimensionError("FunctionSample: functions on mismatched grids");
    }
  }
}

double wasserstein2_1d(const ScalarSample& a, const ScalarSample& b) {
  if (a.size() != b.size()) {
    throw DimensionError("wasserstein2_1d: sample sizes differ (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
  std::vector<double> sa(a.values.data(), a.values.data() + a.size());
  std::vector<double> sb(b.values.data(), b.values.data() + b.size());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < sa.size(); ++k) {
    const double d = sa[k] - sb[k];
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq / static_cast<double>(sa.size()));
}

// Hungarian algorithm in the potentials (dual) formulation: for each row we
// grow an alternating tree over columns, maintaining feasible potentials, and
// augment along the shortest path. O(N^3) overall and exact for real costs.
double assignment_min_cost(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) {
    throw DimensionError("assignment_min_cost: cost matrix must be square");
  }
  const Eigen::Index n = cost.rows();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> row_potential(n + 1, 0.0);
  std::vector<double> col_potential(n + 1, 0.0);
  std::vector<Eigen::Index> matched_row(n + 1, n);  // matched_row[col] = row, n = free
  std::vector<Eigen::Index> previous_col(n + 1, n);

  for (Eigen::Index row = 0; row < n; ++row) {
    matched_row[n] = row;
    Eigen::Index current_col = n;
    std::vector<double> min_reduced(n + 1, kInf);
    std::vector<bool> visited(n + 1, false);
    do {
      visited[current_col] = true;
      const Eigen::Index current_row = matched_row[current_col];
      double best_delta = kInf;
      Eigen::Index best_col = n;
      for (Eigen::Index col = 0; col < n; ++col) {
        if (visited[col]) continue;
        const double reduced =
            cost(current_row, col) - row_potential[current_row] - col_potential[col];
        if (reduced < min_reduced[col]) {
          min_reduced[col] = reduced;
          previous_col[col] = current_col;
        }
        if (min_reduced[col] < best_delta) {
          best_delta = min_reduced[col];
          best_col = col;
        }
      }
      for (Eigen::Index col = 0; col <= n; ++col) {
        if (visited[col]) {
          row_potential[matched_row[col]] += best_delta;
          col_potential[col] -= best_delta;
        } else {
          min_reduced[col] -= best_delta;
        }
      }
      current_col = best_col;
    } while (matched_row[current_col] != n);
    // augment: flip the alternating path back to the artificial column
    while (current_col != n) {
      const Eigen::Index prev = previous_col[current_col];
      matched_row[current_col] = matched_row[prev];
      current_col = prev;
    }
  }

  double total = 0.0;
  for (Eigen::Index col = 0; col < n; ++col) {
    total += cost(matched_row[col], col);
  }
  return total;
}

double wasserstein2_hilbert(const FunctionSample& a, const FunctionSample& b) {
  if (a.size() != b.size()) {
    throw DimensionError("wasserstein2_hilbert: sample sizes differ");
  }
  if (a.functions.front().grid_size() != b.functions.front().grid_size()) {
    throw DimensionError("wasserstein2_hilbert: samples on mismatched grids");
  }
  if (a.space != b.space) {
    throw DimensionError("wasserstein2_hilbert: samples tagged with different spaces");
  }
  const Eigen::Index n = a.size();
  if (n > kAssignmentSizeLimit) {
    throw SizeLimitError("wasserstein2_hilbert: N = " + std::to_string(n) +
                         " exceeds the documented limit " +
                         std::to_string(kAssignmentSizeLimit));
  }

  // squared distances in the tagged space via the Gram matrix:
  // ||a_i - b_j||^2 = <a_i,a_i> + <b_j,b_j> - 2 <a_i,b_j>
  const Eigen::Index m = a.functions.front().grid_size();
  Eigen::MatrixXd lhs(m, n), rhs(m, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    lhs.col(i) = a.functions[i].values();
    rhs.col(i) = b.functions[i].values();
  }
  const Eigen::MatrixXd gram = gram_matrix(m, a.space);
  const Eigen::MatrixXd cross = lhs.transpose() * gram * rhs;
  const Eigen::VectorXd lhs_sq = (lhs.transpose() * gram * lhs).diagonal();
  const Eigen::VectorXd rhs_sq = (rhs.transpose() * gram * rhs).diagonal();
  Eigen::MatrixXd cost =
      (lhs_sq.replicate(1, n) + rhs_sq.transpose().replicate(n, 1) - 2.0 * cross)
          .cwiseMax(0.0);

  return std::sqrt(assignment_min_cost(cost) / static_cast<double>(n));
}

double kolmogorov_distance(const ScalarSample& a, const ScalarSample& b) {
  std::vector<double> sa(a.values.data(), a.values.data() + a.size());
  std::vector<double> sb(b.values.data(), b.values.data() + b.size());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());

  double max_gap = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < sa.size() || ib < sb.size()) {
    const double support = (ib == sb.size() || (ia < sa.size() && sa[ia] <= sb[ib]))
                               ? sa[ia]
                               : sb[ib];
    while (ia < sa.size() && sa[ia] <= support) ++ia;
    while (ib < sb.size() && sb[ib] <= support) ++ib;
    max_gap = std::max(max_gap, std::abs(static_cast<double>(ia) / na -
                                         static_cast<double>(ib) / nb));
  }
  return max_gap;
}

}  // namespace fpcr
