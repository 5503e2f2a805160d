#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "fpcr/operators.hpp"

namespace fpcr {

/// Paired observations (Y_i, X_i) on a common grid.
struct Dataset {
  std::vector<GridFunction> x;
  Eigen::VectorXd y;

  Dataset(std::vector<GridFunction> x_in, Eigen::VectorXd y_in);

  Eigen::Index size() const { return y.size(); }
  Eigen::Index grid_size() const { return x.front().grid_size(); }
};

/// Fitted functional principal component regression at truncation level J.
/// The eigensystem is shared, not copied, so refits on new responses (the
/// bootstrap) reuse the identical decomposition object.
struct FpcrFit {
  Eigen::VectorXd coefficients;  // length J, per retained component
  GridFunction beta_hat;         // reconstructed slope, in span of the first J
  double intercept;              // y_mean - <beta_hat, x_mean>
  Eigen::VectorXd residuals;     // length n, centered by construction
  Eigen::VectorXd fitted;        // length n: y_mean + <beta_hat, X_i - x_mean>
  double y_mean;
  Eigen::Index J;
  std::shared_ptr<const EigenSystem> eigensystem;
  Space space;
};

/// Cross-covariance function n^-1 sum_i (X_i(u) - Xbar(u))(Y_i - Ybar).
GridFunction cross_covariance(const Dataset& data);

/// Spectral form of the FPCR estimator: coefficients gamma_j^-1 <Delta, phi_j>
/// on the first J eigenfunctions of the sample covariance operator.
FpcrFit fit_fpcr(const Dataset& data, Eigen::Index J, Space space);

/// Same estimator, reusing an existing decomposition of the regressors.
FpcrFit fit_fpcr(const Dataset& data, Eigen::Index J,
                 std::shared_ptr<const EigenSystem> eigensystem);

/// Projected least-squares form: regress Y on the scores <X_i, phi_j> with
/// an intercept, solving the full JxJ normal equations without assuming
/// score-covariance diagonality. Agrees with fit_fpcr coefficientwise.
FpcrFit fit_fpcr_leastsquares(const Dataset& data, Eigen::Index J, Space space);
FpcrFit fit_fpcr_leastsquares(const Dataset& data, Eigen::Index J,
                              std::shared_ptr<const EigenSystem> eigensystem);

}  // namespace fpcr
