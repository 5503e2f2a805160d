#pragma once

#include <Eigen/Core>

namespace fpcr {

/// Modified Bessel function of the second kind K_nu(x) for x > 0 and
/// nu >= 0. Integer orders use the logarithmic series for K_0/K_1 plus
/// upward recurrence; non-integer orders use the reflection identity
/// through the I_nu power series; large arguments switch to the asymptotic
/// expansion. Orders in {1/2, 1} (the ones the Matern kernel needs here)
/// are accurate to ~1e-12; the general-nu path is best effort, with the
/// usual truncation error of the asymptotic series for large x.
double bessel_k(double nu, double x);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// CDF and density of the chi-square distribution with J degrees of freedom.
double chi_square_cdf(Eigen::Index J, double x);
double chi_square_pdf(Eigen::Index J, double x);

}  // namespace fpcr
