#include "fpcr/inference.hpp"

#include <cmath>
#include <vector>

#include "fpcr/parallel.hpp"

namespace fpcr {

namespace {

// Everything a bootstrap replicate needs that does not change across
// replicates: centered regressors, spectral quantities, and the original
// coefficients. Building it once makes a replicate O(n*m).
struct BootstrapContext {
  const FpcrFit& fit;
  Eigen::MatrixXd x_centered;       // m x n
  Eigen::VectorXd sqrt_eigenvalues; // length J
  double scale;                     // sqrt(n / J)

  BootstrapContext(const FpcrFit& fit_in, const Dataset& data) : fit(fit_in) {
    const Eigen::Index n = data.size();
    const Eigen::Index m = data.grid_size();
    if (fit.residuals.size() != n) {
      throw DimensionError("bootstrap_replicate: fit was produced from a different sample size");
    }
    x_centered.resize(m, n);
    const Eigen::VectorXd& x_mean = fit.eigensystem->mean().values();
    for (Eigen::Index i = 0; i < n; ++i) {
      x_centered.col(i) = data.x[i].values() - x_mean;
    }
    sqrt_eigenvalues = fit.eigensystem->eigenvalues().head(fit.J).cwiseSqrt();
    scale = std::sqrt(static_cast<double>(n) / static_cast<double>(fit.J));
  }

  ScaledStatistic replicate(std::span<const Eigen::Index> indices) const {
    const Eigen::Index n = x_centered.cols();
    if (static_cast<Eigen::Index>(indices.size()) != n) {
      throw DimensionError("bootstrap_replicate: index stream length must equal n");
    }
    Eigen::VectorXd y_star(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      y_star[i] = fit.fitted[i] + fit.residuals[indices[i]];
    }
    // Delta* = n^-1 sum_i (X_i - Xbar)(Y*_i - Ybar*)
    const Eigen::VectorXd y_star_centered = y_star.array() - y_star.mean();
    const Eigen::VectorXd delta_star = x_centered * y_star_centered / static_cast<double>(n);
    Eigen::VectorXd coef_star = fit.eigensystem->project(delta_star, fit.J);
    coef_star.array() /= fit.eigensystem->eigenvalues().head(fit.J).array();
    // statistic of beta*_hat - beta_hat through the shared eigensystem
    const Eigen::VectorXd scaled =
        scale * sqrt_eigenvalues.cwiseProduct(coef_star - fit.coefficients);
    return make_scaled_statistic(
        GridFunction(fit.eigensystem->basis().leftCols(fit.J) * scaled));
  }
};

double bootstrap_p_value(const Eigen::VectorXd& replicates, double observed) {
  const Eigen::Index exceed = (replicates.array() >= observed).count();
  return static_cast<double>(1 + exceed) / static_cast<double>(replicates.size() + 1);
}

}  // namespace

ScaledStatistic make_scaled_statistic(GridFunction t) {
  const double s_sq = inner_product(t, t, Space::L2);
  const double s_sup = sup_norm(t);
  return ScaledStatistic{std::move(t), s_sq, s_sup};
}

ScaledStatistic statistic_T(const FpcrFit& fit, const GridFunction& beta_ref, Eigen::Index n) {
  if (beta_ref.grid_size() != fit.beta_hat.grid_size()) {
    throw DimensionError("statistic_T: beta_ref grid mismatch");
  }
  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(fit.J));
  const GridFunction scaled =
      pseudo_power_apply(*fit.eigensystem, 0.5, fit.J, fit.beta_hat - beta_ref);
  return make_scaled_statistic(scale * scaled);
}

ScaledStatistic bootstrap_replicate(const FpcrFit& fit, const Dataset& data, RandomStream& rng) {
  const Eigen::Index n = data.size();
  std::vector<Eigen::Index> indices(n);
  for (auto& idx : indices) idx = static_cast<Eigen::Index>(rng.uniform_index(n));
  return BootstrapContext(fit, data).replicate(indices);
}

ScaledStatistic bootstrap_replicate(const FpcrFit& fit, const Dataset& data,
                                    std::span<const Eigen::Index> indices) {
  return BootstrapContext(fit, data).replicate(indices);
}

TestOutcome significance_test(const Dataset& data, double alpha, Eigen::Index B, Space space,
                              const FveConfig& fve, std::uint64_t seed, int n_threads) {
  // alpha = 1 is allowed as the degenerate always-reject level
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw PreconditionError("significance_test: alpha must lie in (0,1]");
  }
  if (B < 1) {
    throw PreconditionError("significance_test: B must be positive");
  }
  const Eigen::VectorXd y_centered = data.y.array() - data.y.mean();
  if (y_centered.cwiseAbs().maxCoeff() == 0.0) {
    throw DegenerateDataError("significance_test: response has zero variance");
  }

  auto es = std::make_shared<const EigenSystem>(
      eigen_decompose(sample_covariance(data.x, space)));
  if (es->rank() == 0) {
    throw DegenerateDataError("significance_test: regressors carry no variation");
  }
  const Eigen::Index J = fve_select_J(es->eigenvalues(), fve.threshold, fve.j_max);
  const FpcrFit fit = fit_fpcr(data, J, es);

  const ScaledStatistic observed =
      statistic_T(fit, GridFunction::zero(data.grid_size()), data.size());

  const BootstrapContext ctx(fit, data);
  const Eigen::Index n = data.size();
  Eigen::VectorXd boot_sq(B);
  Eigen::VectorXd boot_sup(B);
  parallel_for_indexed(static_cast<std::size_t>(B), n_threads, [&](std::size_t b) {
    RandomStream rng = RandomStream::derive(seed, b, StreamRole::kBootstrap);
    std::vector<Eigen::Index> indices(n);
    for (auto& idx : indices) idx = static_cast<Eigen::Index>(rng.uniform_index(n));
    const ScaledStatistic stat = ctx.replicate(indices);
    boot_sq[static_cast<Eigen::Index>(b)] = stat.s_sq;
    boot_sup[static_cast<Eigen::Index>(b)] = stat.s_sup;
  });

  const double p_sq = bootstrap_p_value(boot_sq, observed.s_sq);
  const double p_sup = bootstrap_p_value(boot_sup, observed.s_sup);
  return TestOutcome{observed, std::move(boot_sq), std::move(boot_sup), p_sq, p_sup,
                     p_sq <= alpha, p_sup <= alpha, alpha, J, seed};
}

GridFunction sample_gaussian_reference(std::span<const GridFunction> basis, Space space,
                                       double sigma, RandomStream& rng) {
  const auto J = static_cast<Eigen::Index>(basis.size());
  if (J < 1) {
    throw PreconditionError("sample_gaussian_reference: empty basis");
  }
  if (!(sigma > 0.0)) {
    throw PreconditionError("sample_gaussian_reference: sigma must be positive");
  }
  constexpr double kOrthoTol = 1e-6;
  for (Eigen::Index j = 0; j < J; ++j) {
    for (Eigen::Index k = j; k < J; ++k) {
      const double ip = inner_product(basis[j], basis[k], space);
      const double target = (j == k) ? 1.0 : 0.0;
      if (std::abs(ip - target) > kOrthoTol) {
        throw PreconditionError("sample_gaussian_reference: basis not orthonormal, <phi_" +
                                std::to_string(j + 1) + ", phi_" + std::to_string(k + 1) +
                                "> = " + std::to_string(ip));
      }
    }
  }
  Eigen::VectorXd draw = Eigen::VectorXd::Zero(basis[0].grid_size());
  const double scale = sigma / std::sqrt(static_cast<double>(J));
  for (Eigen::Index j = 0; j < J; ++j) {
    draw += rng.normal() * basis[j].values();
  }
  return GridFunction(scale * draw);
}

double chi_square_mode_density(Eigen::Index J) {
  if (J <= 2) {
    throw DomainError("chi_square_mode_density requires J > 2, got " + std::to_string(J));
  }
  const double half = static_cast<double>(J) / 2.0;
  const double mode = static_cast<double>(J - 2);
  const double log_density =
      -half * std::log(2.0) - std::lgamma(half) + (half - 1.0) * std::log(mode) - mode / 2.0;
  return std::exp(log_density);
}

double variance_identity_check(const Dataset& data, double sigma, Eigen::Index J, int n_mc,
                               RandomStream& rng, Space space) {
  if (!(sigma > 0.0)) {
    throw PreconditionError("variance_identity_check: sigma must be positive");
  }
  if (n_mc < 1) {
    throw PreconditionError("variance_identity_check: n_mc must be positive");
  }
  const Eigen::Index n = data.size();
  const EigenSystem es = eigen_decompose(sample_covariance(data.x, space));

  double accum = 0.0;
  Eigen::VectorXd errors(n);
  for (int draw = 0; draw < n_mc; ++draw) {
    for (Eigen::Index i = 0; i < n; ++i) errors[i] = sigma * rng.normal();
    // U_n is the cross-covariance of the fixed regressors with the errors
    const GridFunction u_n = cross_covariance(Dataset(data.x, errors));
    const GridFunction scaled = pseudo_power_apply(es, -0.5, J, u_n);
    const double nrm = norm(scaled, space);
    accum += nrm * nrm;
  }
  const double exact = sigma * sigma * static_cast<double>(J) / static_cast<double>(n);
  return (accum / static_cast<double>(n_mc)) / exact;
}

}  // namespace fpcr
