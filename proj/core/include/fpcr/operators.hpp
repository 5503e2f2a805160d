#pragma once

#include <Eigen/Core>
#include <vector>

#include "fpcr/grid_function.hpp"

namespace fpcr {

/// Discretized covariance operator. `kernel` holds the pointwise kernel
/// C(u_j, u_k); the operator acts on a grid function f as kernel * (M f)
/// where M is the Gram matrix of the tagged space, i.e. the quadrature
/// realization of (Gf)(u) = <C(u,.), f>.
struct CovarianceOperator {
  Eigen::MatrixXd kernel;
  GridFunction mean;
  Space space;
  Eigen::Index n_samples;

  CovarianceOperator(Eigen::MatrixXd kernel_in, GridFunction mean_in, Space space_in,
                     Eigen::Index n_samples_in);
};

/// Spectral decomposition of a covariance operator: eigenvalues sorted
/// descending and clipped at zero, eigenfunctions orthonormal under the
/// tagged inner product, plus the eigengaps and the mean function.
class EigenSystem {
 public:
  EigenSystem(Eigen::VectorXd eigenvalues, Eigen::MatrixXd basis, GridFunction mean, Space space);

  Eigen::Index count() const { return eigenvalues_.size(); }
  Eigen::Index grid_size() const { return basis_.rows(); }
  Space space() const { return space_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::VectorXd& eigengaps() const { return eigengaps_; }
  const GridFunction& mean() const { return mean_; }
  /// Grid values of all eigenfunctions, one per column.
  const Eigen::MatrixXd& basis() const { return basis_; }
  GridFunction eigenfunction(Eigen::Index j) const;

  /// Coefficients <f, phi_j> for j = 0..J-1 in the tagged inner product.
  Eigen::VectorXd project(const Eigen::VectorXd& values, Eigen::Index J) const;

  /// Number of eigenvalues above rel_tol * gamma_1.
  Eigen::Index rank(double rel_tol = 1e-12) const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd basis_;   // m x p, column j = phi_j
  Eigen::VectorXd eigengaps_;
  GridFunction mean_;
  Space space_;
  Eigen::MatrixXd gram_;    // Gram matrix of the tagged space, cached
};

/// Empirical covariance operator of n >= 2 curves on a common grid:
/// kernel K_jk = n^-1 sum_i (X_i(u_j) - Xbar(u_j))(X_i(u_k) - Xbar(u_k)).
CovarianceOperator sample_covariance(const std::vector<GridFunction>& curves, Space space);

/// Solve the weighted symmetric eigenproblem of the operator so that the
/// returned eigenfunctions are orthonormal under the tagged inner product.
/// Sign is fixed so each eigenfunction's largest-magnitude entry is
/// positive; eigenvalues are clipped at zero.
EigenSystem eigen_decompose(const CovarianceOperator& op);

/// Apply the pseudo power sum_{j<=J} gamma_j^a <f, phi_j> phi_j.
GridFunction pseudo_power_apply(const EigenSystem& es, double a, Eigen::Index J,
                                const GridFunction& f);

/// Smallest J in 1..J_max whose fraction of variance explained reaches the
/// threshold; J_max if none does.
Eigen::Index fve_select_J(const Eigen::VectorXd& eigenvalues, double threshold,
                          Eigen::Index J_max);

struct OperatorNorms {
  double sup;      // largest |eigenvalue|
  double hs;       // Hilbert-Schmidt: sqrt(sum of squared eigenvalues)
  double nuclear;  // sum of |eigenvalues|
};

/// Norms of the operator represented by the symmetric matrix A in the
/// tagged space, computed from the eigenvalues of the weighted form
/// M^{1/2} A M^{1/2}.
OperatorNorms operator_norms(const Eigen::MatrixXd& a, Space space);

/// Scalar diagnostics for the truncation level J at sample size n; reported
/// for inspection, never pass/fail. A vanishing eigengap shows up as an
/// infinite term rather than an exception.
struct ConditionReport {
  double max_scaled_eigenvalue;  // sup_{j<=J} gamma_j * j * log j
  double eigengap_inverse_sum;   // n^-1 sum_{j<=J} delta_j^-2
  double truncation_growth;      // n^-1/2 sum_{j<=J} j * log j
  int near_duplicate_count;      // gaps below 1e-10 * gamma_1 among j <= J
};

ConditionReport condition_diagnostics(const EigenSystem& es, Eigen::Index J, Eigen::Index n);

}  // namespace fpcr
