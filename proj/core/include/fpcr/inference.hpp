#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>

#include "fpcr/random.hpp"
#include "fpcr/regression.hpp"

namespace fpcr {

/// Operator-scaled functional statistic together with its two norms:
/// s_sq is the squared L2 norm (integral of t^2), s_sup the grid maximum
/// of |t|. These are the two test statistics evaluated on t.
struct ScaledStatistic {
  GridFunction t_function;
  double s_sq;
  double s_sup;
};

ScaledStatistic make_scaled_statistic(GridFunction t);

/// Truncation-selection rule: smallest J whose fraction of variance
/// explained reaches `threshold`, searched over 1..j_max.
struct FveConfig {
  double threshold = 0.75;
  Eigen::Index j_max = 20;
};

/// Result of the bootstrap significance test of the zero-slope hypothesis.
struct TestOutcome {
  ScaledStatistic observed;
  Eigen::VectorXd boot_sq;   // length B
  Eigen::VectorXd boot_sup;  // length B
  double p_sq;
  double p_sup;
  bool reject_sq;
  bool reject_sup;
  double alpha;
  Eigen::Index J;
  std::uint64_t seed;
};

/// t = sqrt(n/J) * Ghat_J^{1/2} (beta_hat - beta_ref). Pass the zero
/// function as beta_ref for the null statistic.
ScaledStatistic statistic_T(const FpcrFit& fit, const GridFunction& beta_ref, Eigen::Index n);

/// One residual-bootstrap replicate: responses regenerated through the
/// fitted model with errors resampled uniformly from the centered
/// residuals, refit with the same eigensystem and the same J, statistic of
/// beta*_hat - beta_hat.
ScaledStatistic bootstrap_replicate(const FpcrFit& fit, const Dataset& data, RandomStream& rng);

/// Deterministic-index variant; indices[i] selects the residual used as
/// the i-th bootstrap error.
ScaledStatistic bootstrap_replicate(const FpcrFit& fit, const Dataset& data,
                                    std::span<const Eigen::Index> indices);

/// Bootstrap significance test of the zero-slope hypothesis at level alpha
/// with B resamples. Replicate b draws from the stream derived from
/// (seed, b), so results are independent of n_threads.
TestOutcome significance_test(const Dataset& data, double alpha, Eigen::Index B, Space space,
                              const FveConfig& fve, std::uint64_t seed, int n_threads = 1);

/// One draw of sigma * J^{-1/2} * sum_j xi_j phi_j with iid standard
/// normal xi; the basis must be orthonormal in the tagged space.
GridFunction sample_gaussian_reference(std::span<const GridFunction> basis, Space space,
                                       double sigma, RandomStream& rng);

/// Maximum of the chi-square(J) density, attained at J-2 for J > 2;
/// evaluated in log space.
double chi_square_mode_density(Eigen::Index J);

/// Monte Carlo check of the exact conditional second-moment identity for
/// the scaled cross-covariance of fixed regressors with synthetic errors
/// of variance sigma^2. Returns the ratio of the MC average to the exact
/// value sigma^2 J / n; the ratio tends to 1 as n_mc grows.
double variance_identity_check(const Dataset& data, double sigma, Eigen::Index J, int n_mc,
                               RandomStream& rng, Space space = Space::L2);

}  // namespace fpcr
