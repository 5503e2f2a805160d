#include "fpcr/regression.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <utility>

namespace fpcr {

namespace {

constexpr double kRankRelTol = 1e-12;

// Centered scores s_ij = <X_i - Xbar, phi_j> in the tagged inner product.
Eigen::MatrixXd centered_scores(const Dataset& data, const EigenSystem& es, Eigen::Index J) {
  const Eigen::Index n = data.size();
  const Eigen::Index m = data.grid_size();
  Eigen::MatrixXd centered(m, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    centered.col(i) = data.x[i].values() - es.mean().values();
  }
  const Eigen::MatrixXd gram = gram_matrix(m, es.space());
  return centered.transpose() * gram * es.basis().leftCols(J);
}

FpcrFit assemble_fit(const Dataset& data, std::shared_ptr<const EigenSystem> es,
                     Eigen::Index J, Eigen::VectorXd coefficients,
                     const Eigen::MatrixXd& scores) {
  const double y_mean = data.y.mean();
  GridFunction beta_hat(es->basis().leftCols(J) * coefficients);
  const Eigen::VectorXd fitted =
      Eigen::VectorXd::Constant(data.size(), y_mean) + scores * coefficients;
  const Eigen::VectorXd residuals = data.y - fitted;
  const double intercept = y_mean - inner_product(beta_hat, es->mean(), es->space());
  const Space space = es->space();
  return FpcrFit{std::move(coefficients), std::move(beta_hat), intercept, residuals,
                 fitted, y_mean, J, std::move(es), space};
}

void check_fit_preconditions(const Dataset& data, const EigenSystem& es, Eigen::Index J) {
  if (es.grid_size() != data.grid_size()) {
    throw DimensionError("fit_fpcr: eigensystem grid does not match data grid");
  }
  if (J < 1 || J > es.count()) {
    throw PreconditionError("fit_fpcr: J = " + std::to_string(J) + " outside 1.." +
                            std::to_string(es.count()));
  }
  const Eigen::VectorXd& gamma = es.eigenvalues();
  const double cutoff = kRankRelTol * gamma[0];
  for (Eigen::Index j = 0; j < J; ++j) {
    if (gamma[j] <= cutoff) {
      throw SingularDesignError("fit_fpcr: eigenvalue gamma_" + std::to_string(j + 1) +
                                " = " + std::to_string(gamma[j]) +
                                " below rank tolerance; reduce J");
    }
  }
}

}  // namespace

Dataset::Dataset(std::vector<GridFunction> x_in, Eigen::VectorXd y_in)
    : x(std::move(x_in)), y(std::move(y_in)) {
  if (static_cast<Eigen::Index>(x.size()) != y.size()) {
    throw DimensionError("Dataset: X and Y lengths differ");
  }
  if (y.size() < 2) {
    throw InsufficientDataError("Dataset needs n >= 2 observations, got " +
                                std::to_string(y.size()));
  }
  const Eigen::Index m = x.front().grid_size();
  for (const auto& xi : x) {
    if (xi.grid_size() != m) {
      throw DimensionError("Dataset: curves on mismatched grids");
    }
  }
  if (!y.allFinite()) {
    throw PreconditionError("Dataset: responses must be finite");
  }
}

GridFunction cross_covariance(const Dataset& data) {
  const Eigen::Index n = data.size();
  const Eigen::Index m = data.grid_size();
  Eigen::VectorXd x_mean = Eigen::VectorXd::Zero(m);
  for (const auto& xi : data.x) x_mean += xi.values();
  x_mean /= static_cast<double>(n);
  const double y_mean = data.y.mean();
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    delta += (data.x[i].values() - x_mean) * (data.y[i] - y_mean);
  }
  return GridFunction(delta / static_cast<double>(n));
}

FpcrFit fit_fpcr(const Dataset& data, Eigen::Index J, Space space) {
  auto es = std::make_shared<const EigenSystem>(eigen_decompose(sample_covariance(data.x, space)));
  return fit_fpcr(data, J, std::move(es));
}

FpcrFit fit_fpcr(const Dataset& data, Eigen::Index J,
                 std::shared_ptr<const EigenSystem> eigensystem) {
  check_fit_preconditions(data, *eigensystem, J);
  const GridFunction delta = cross_covariance(data);
  Eigen::VectorXd coefficients = eigensystem->project(delta.values(), J);
  coefficients.array() /= eigensystem->eigenvalues().head(J).array();
  const Eigen::MatrixXd scores = centered_scores(data, *eigensystem, J);
  return assemble_fit(data, std::move(eigensystem), J, std::move(coefficients), scores);
}

FpcrFit fit_fpcr_leastsquares(const Dataset& data, Eigen::Index J, Space space) {
  auto es = std::make_shared<const EigenSystem>(eigen_decompose(sample_covariance(data.x, space)));
  return fit_fpcr_leastsquares(data, J, std::move(es));
}

FpcrFit fit_fpcr_leastsquares(const Dataset& data, Eigen::Index J,
                              std::shared_ptr<const EigenSystem> eigensystem) {
  check_fit_preconditions(data, *eigensystem, J);
  const Eigen::MatrixXd scores = centered_scores(data, *eigensystem, J);
  // intercept handled by centering, so the normal equations involve the
  // centered scores only
  const Eigen::MatrixXd score_centered =
      scores.rowwise() - scores.colwise().mean();
  const Eigen::VectorXd y_centered = data.y.array() - data.y.mean();
  const Eigen::MatrixXd normal = score_centered.transpose() * score_centered;
  const Eigen::VectorXd rhs = score_centered.transpose() * y_centered;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw SingularDesignError("fit_fpcr_leastsquares: singular normal equations at J = " +
                              std::to_string(J));
  }
  Eigen::VectorXd coefficients = lu.solve(rhs);
  return assemble_fit(data, std::move(eigensystem), J, std::move(coefficients), scores);
}

}  // namespace fpcr
