#include "fpcr/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <utility>

namespace fpcr {

namespace {

constexpr double kSymmetryTol = 1e-10;
constexpr double kPsdTol = 1e-8;
constexpr double kRankRelTol = 1e-12;
constexpr double kNearDuplicateRelTol = 1e-10;

void check_symmetric(const Eigen::MatrixXd& a, double tol, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    throw PreconditionError(std::string(what) + ": matrix not symmetric (max asymmetry " +
                            std::to_string(asym) + ")");
  }
}

}  // namespace

CovarianceOperator::CovarianceOperator(Eigen::MatrixXd kernel_in, GridFunction mean_in,
                                       Space space_in, Eigen::Index n_samples_in)
    : kernel(std::move(kernel_in)), mean(std::move(mean_in)), space(space_in),
      n_samples(n_samples_in) {
  if (kernel.rows() != mean.grid_size()) {
    throw DimensionError("CovarianceOperator: kernel size does not match mean grid");
  }
  check_symmetric(kernel, kSymmetryTol, "CovarianceOperator");
}

EigenSystem::EigenSystem(Eigen::VectorXd eigenvalues, Eigen::MatrixXd basis, GridFunction mean,
                         Space space)
    : eigenvalues_(std::move(eigenvalues)), basis_(std::move(basis)), mean_(std::move(mean)),
      space_(space), gram_(gram_matrix(basis_.rows(), space)) {
  const Eigen::Index p = eigenvalues_.size();
  eigengaps_.resize(p);
  if (p >= 2) {
    eigengaps_[0] = eigenvalues_[0] - eigenvalues_[1];
    for (Eigen::Index j = 1; j + 1 < p; ++j) {
      eigengaps_[j] = std::min(eigenvalues_[j] - eigenvalues_[j + 1],
                               eigenvalues_[j - 1] - eigenvalues_[j]);
    }
    // no right neighbor for the last computed eigenvalue
    eigengaps_[p - 1] = eigenvalues_[p - 2] - eigenvalues_[p - 1];
  } else if (p == 1) {
    eigengaps_[0] = eigenvalues_[0];
  }
}

GridFunction EigenSystem::eigenfunction(Eigen::Index j) const {
  return GridFunction(basis_.col(j));
}

Eigen::VectorXd EigenSystem::project(const Eigen::VectorXd& values, Eigen::Index J) const {
  return basis_.leftCols(J).transpose() * (gram_ * values);
}

Eigen::Index EigenSystem::rank(double rel_tol) const {
  if (eigenvalues_.size() == 0 || eigenvalues_[0] <= 0.0) return 0;
  const double cutoff = rel_tol * eigenvalues_[0];
  Eigen::Index r = 0;
  while (r < eigenvalues_.size() && eigenvalues_[r] > cutoff) ++r;
  return r;
}

CovarianceOperator sample_covariance(const std::vector<GridFunction>& curves, Space space) {
  const auto n = static_cast<Eigen::Index>(curves.size());
  if (n < 2) {
    throw InsufficientDataError("sample_covariance needs n >= 2 curves, got " +
                                std::to_string(n));
  }
  const Eigen::Index m = curves[0].grid_size();
  for (const auto& x : curves) {
    if (x.grid_size() != m) {
      throw DimensionError("sample_covariance: curves on mismatched grids");
    }
  }
  Eigen::MatrixXd data(m, n);
  for (Eigen::Index i = 0; i < n; ++i) data.col(i) = curves[i].values();
  const Eigen::VectorXd mean = data.rowwise().mean();
  data.colwise() -= mean;
  Eigen::MatrixXd kernel = (data * data.transpose()) / static_cast<double>(n);
  kernel = 0.5 * (kernel + kernel.transpose()).eval();
  return CovarianceOperator(std::move(kernel), GridFunction(mean), space, n);
}

EigenSystem eigen_decompose(const CovarianceOperator& op) {
  const Eigen::Index m = op.kernel.rows();
  Eigen::VectorXd values;
  Eigen::MatrixXd basis;

  if (op.space == Space::L2) {
    // diagonal Gram: transform to W^{1/2} K W^{1/2} and map back
    const Eigen::VectorXd w_sqrt = quadrature_weights(m).cwiseSqrt();
    Eigen::MatrixXd weighted =
        w_sqrt.asDiagonal() * op.kernel * Eigen::MatrixXd(w_sqrt.asDiagonal());
    weighted = 0.5 * (weighted + weighted.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(weighted);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigen_decompose: L2 eigensolver failed on a " + std::to_string(m) +
                           "x" + std::to_string(m) + " kernel");
    }
    values = solver.eigenvalues();
    basis = solver.eigenvectors().array().colwise() / w_sqrt.array();
  } else {
    // generalized problem M K M phi = gamma M phi with the W12 Gram matrix;
    // eigenvectors come out M-orthonormal
    const Eigen::MatrixXd gram = gram_matrix(m, op.space);
    Eigen::MatrixXd lhs = gram * op.kernel * gram;
    lhs = 0.5 * (lhs + lhs.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(lhs, gram);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigen_decompose: W12 generalized eigensolver failed on a " +
                           std::to_string(m) + "x" + std::to_string(m) + " kernel");
    }
    values = solver.eigenvalues();
    basis = solver.eigenvectors();
  }

  values.reverseInPlace();
  basis = basis.rowwise().reverse().eval();

  const double lambda_max = values.size() > 0 ? values[0] : 0.0;
  const double lambda_min = values.size() > 0 ? values[values.size() - 1] : 0.0;
  if (lambda_min < -kPsdTol * std::max(1.0, lambda_max)) {
    throw NumericalError("eigen_decompose: kernel not positive semi-definite (min eigenvalue " +
                         std::to_string(lambda_min) + ", max " + std::to_string(lambda_max) +
                         ")");
  }
  values = values.cwiseMax(0.0);

  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Eigen::Index peak = 0;
    basis.col(j).cwiseAbs().maxCoeff(&peak);
    if (basis(peak, j) < 0.0) basis.col(j) = -basis.col(j);
  }

  return EigenSystem(std::move(values), std::move(basis), op.mean, op.space);
}

GridFunction pseudo_power_apply(const EigenSystem& es, double a, Eigen::Index J,
                                const GridFunction& f) {
  if (J < 1 || J > es.count()) {
    throw PreconditionError("pseudo_power_apply: J = " + std::to_string(J) +
                            " outside 1.." + std::to_string(es.count()));
  }
  if (f.grid_size() != es.grid_size()) {
    throw DimensionError("pseudo_power_apply: grid mismatch");
  }
  const Eigen::VectorXd& gamma = es.eigenvalues();
  if (a < 0.0 && gamma[J - 1] <= kRankRelTol * gamma[0]) {
    throw SingularOperatorError("pseudo_power_apply: negative power past numerical rank, "
                                "gamma_" + std::to_string(J) + " = " +
                                std::to_string(gamma[J - 1]));
  }
  Eigen::VectorXd coef = es.project(f.values(), J);
  for (Eigen::Index j = 0; j < J; ++j) coef[j] *= std::pow(gamma[j], a);
  return GridFunction(es.basis().leftCols(J) * coef);
}

Eigen::Index fve_select_J(const Eigen::VectorXd& eigenvalues, double threshold,
                          Eigen::Index J_max) {
  if (J_max < 1) {
    throw PreconditionError("fve_select_J: J_max must be positive");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw PreconditionError("fve_select_J: threshold must lie in (0,1)");
  }
  const double total = eigenvalues.sum();
  if (!(total > 0.0)) {
    throw DegenerateDataError("fve_select_J: all eigenvalues vanish");
  }
  double cumulative = 0.0;
  const Eigen::Index limit = std::min<Eigen::Index>(J_max, eigenvalues.size());
  for (Eigen::Index j = 0; j < limit; ++j) {
    cumulative += eigenvalues[j];
    if (cumulative / total >= threshold) return j + 1;
  }
  return J_max;
}

OperatorNorms operator_norms(const Eigen::MatrixXd& a, Space space) {
  check_symmetric(a, kSymmetryTol, "operator_norms");
  const Eigen::Index m = a.rows();
  Eigen::MatrixXd weighted;
  if (space == Space::L2) {
    const Eigen::VectorXd w_sqrt = quadrature_weights(m).cwiseSqrt();
    weighted = w_sqrt.asDiagonal() * a * Eigen::MatrixXd(w_sqrt.asDiagonal());
  } else {
    const Eigen::MatrixXd gram = gram_matrix(m, space);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram_solver(gram);
    if (gram_solver.info() != Eigen::Success) {
      throw NumericalError("operator_norms: Gram factorization failed");
    }
    const Eigen::MatrixXd gram_sqrt = gram_solver.operatorSqrt();
    weighted = gram_sqrt * a * gram_sqrt;
  }
  weighted = 0.5 * (weighted + weighted.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(weighted);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("operator_norms: eigensolver failed");
  }
  const Eigen::VectorXd abs_values = solver.eigenvalues().cwiseAbs();
  return OperatorNorms{abs_values.maxCoeff(), std::sqrt(abs_values.squaredNorm()),
                       abs_values.sum()};
}

ConditionReport condition_diagnostics(const EigenSystem& es, Eigen::Index J, Eigen::Index n) {
  if (J < 1 || J > es.count()) {
    throw PreconditionError("condition_diagnostics: J outside available eigenvalues");
  }
  if (n < 1) {
    throw PreconditionError("condition_diagnostics: n must be positive");
  }
  const Eigen::VectorXd& gamma = es.eigenvalues();
  const Eigen::VectorXd& delta = es.eigengaps();
  const double gap_tol = kNearDuplicateRelTol * std::max(gamma[0], 0.0);

  ConditionReport report{0.0, 0.0, 0.0, 0};
  for (Eigen::Index j = 0; j < J; ++j) {
    const double jlogj = static_cast<double>(j + 1) * std::log(static_cast<double>(j + 1));
    report.max_scaled_eigenvalue = std::max(report.max_scaled_eigenvalue, gamma[j] * jlogj);
    report.truncation_growth += jlogj;
    if (delta[j] <= gap_tol) {
      report.eigengap_inverse_sum = std::numeric_limits<double>::infinity();
      ++report.near_duplicate_count;
    } else if (!std::isinf(report.eigengap_inverse_sum)) {
      report.eigengap_inverse_sum += 1.0 / (delta[j] * delta[j]);
    }
  }
  if (!std::isinf(report.eigengap_inverse_sum)) {
    report.eigengap_inverse_sum /= static_cast<double>(n);
  }
  report.truncation_growth /= std::sqrt(static_cast<double>(n));
  return report;
}

}  // namespace fpcr
