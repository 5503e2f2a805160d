#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "fpcr/inference.hpp"
#include "fpcr/random.hpp"
#include "fpcr/regression.hpp"

namespace fpcr {

/// Matern covariance parameters (variance, length scale, smoothness).
struct MaternParams {
  double sigma2 = 1.0;
  double rho = 1.0;
  double nu = 1.0;
};

enum class SlopeKind { kSparsest, kSparse, kDense, kDensest };

const char* slope_kind_name(SlopeKind kind);
SlopeKind parse_slope_kind(const std::string& name);
Space parse_space(const std::string& name);

/// One simulation scenario: sample size, grid, alternative strength c,
/// slope shape, FPCA space, test level, bootstrap resamples, Monte Carlo
/// repetitions, truncation rule, and the master seed.
struct ExperimentConfig {
  Eigen::Index n = 50;
  Eigen::Index m = 50;
  double c = 0.0;
  SlopeKind slope_kind = SlopeKind::kSparsest;
  Space space = Space::L2;
  double alpha = 0.05;
  Eigen::Index B = 1000;
  int reps = 500;
  double fve_threshold = 0.75;
  Eigen::Index j_max = 20;
  std::uint64_t seed = 1;
  MaternParams matern;
};

void validate_config(const ExperimentConfig& cfg);

/// Rejection rates over the Monte Carlo repetitions, with binomial standard
/// errors and the average selected truncation level.
struct ExperimentResult {
  ExperimentConfig config;
  double reject_rate_sq;
  double reject_rate_sup;
  double mc_se_sq;
  double mc_se_sup;
  double mean_selected_J;
  int n_failed;
};

/// More than 1% of replicates failed; partial results are not reported.
class ExcessiveFailureError : public Error {
 public:
  using Error::Error;
};

/// Matern covariance value C(u1, u2); equals sigma2 on the diagonal.
double matern_kernel(double u1, double u2, const MaternParams& p);

/// Gridded Matern kernel on the m-point uniform grid.
Eigen::MatrixXd matern_kernel_matrix(Eigen::Index m, const MaternParams& p);

/// Population covariance operator of the Matern process, for reference
/// eigenfunctions.
CovarianceOperator matern_covariance_operator(Eigen::Index m, const MaternParams& p, Space space);

/// Lower-triangular Cholesky factor of the gridded kernel; on failure adds
/// diagonal jitter starting at 1e-10 * sigma2 and doubling up to
/// 1e-6 * sigma2.
Eigen::MatrixXd gp_cholesky_factor(const Eigen::MatrixXd& kernel, double sigma2);

/// One draw of the centered Gaussian process: factor times iid normals.
GridFunction sample_gp(const Eigen::MatrixXd& chol_factor, RandomStream& rng);

/// Unit-variance Laplace deviate via the inverse CDF; u = 1/2 maps to 0.
double laplace_from_uniform(double u);
double laplace_error(RandomStream& rng);

/// Trigonometric system: 1, sqrt(2) sin(2 pi u), sqrt(2) cos(2 pi u),
/// sqrt(2) sin(4 pi u), ... evaluated on the m-point grid (1-based j).
GridFunction trig_basis(Eigen::Index j, Eigen::Index m);

/// Slope function c * beta_1 for the four alternative shapes.
GridFunction make_slope(SlopeKind kind, double c, Eigen::Index m);

/// Draw one dataset: Matern Gaussian-process regressors, responses
/// <slope, X_i> by quadrature plus unit-variance Laplace errors, zero
/// intercept. Regressor and error draws come from separate streams.
Dataset generate_dataset(const ExperimentConfig& cfg, RandomStream& gp_rng,
                         RandomStream& error_rng);

/// Convenience wrapper deriving the (seed, rep, role) streams.
Dataset generate_dataset_for_rep(const ExperimentConfig& cfg, int rep);

/// Run the Monte Carlo experiment: `reps` independent datasets, one
/// significance test each, rejection indicators averaged. Repetitions are
/// independent jobs; results are deterministic for a given seed regardless
/// of n_threads.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int n_threads = 1);

}  // namespace fpcr
