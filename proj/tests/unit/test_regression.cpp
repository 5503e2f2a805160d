#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "fpcr/regression.hpp"
#include "fpcr/random.hpp"
#include "fpcr/simulation.hpp"

using namespace fpcr;

namespace {

std::vector<GridFunction> matern_panel(Eigen::Index n, Eigen::Index m, std::uint64_t seed) {
  const MaternParams params;
  const Eigen::MatrixXd chol = gp_cholesky_factor(matern_kernel_matrix(m, params), params.sigma2);
  RandomStream rng(seed);
  std::vector<GridFunction> panel;
  panel.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) panel.push_back(sample_gp(chol, rng));
  return panel;
}

}  // namespace

TEST_CASE("Dataset invariants") {
  std::vector<GridFunction> x{GridFunction::zero(5), GridFunction::zero(5)};
  CHECK_THROWS_AS(Dataset(x, Eigen::VectorXd::Zero(3)), DimensionError);
  CHECK_THROWS_AS(Dataset({GridFunction::zero(5)}, Eigen::VectorXd::Zero(1)),
                  InsufficientDataError);
  std::vector<GridFunction> ragged{GridFunction::zero(5), GridFunction::zero(6)};
  CHECK_THROWS_AS(Dataset(ragged, Eigen::VectorXd::Zero(2)), DimensionError);
}

TEST_CASE("cross_covariance vanishes for constant responses") {
  const auto panel = matern_panel(12, 20, 5);
  const GridFunction delta = cross_covariance(Dataset(panel, Eigen::VectorXd::Constant(12, 3.0)));
  CHECK(sup_norm(delta) < 1e-14);
}

TEST_CASE("cross_covariance two-point case") {
  const Eigen::Index m = 15;
  const GridFunction f = GridFunction::sample(m, [](double u) { return std::sin(u) + 1.0; });
  Eigen::VectorXd y(2);
  y << 1.0, -1.0;
  const GridFunction delta = cross_covariance(Dataset({f, -1.0 * f}, y));
  CHECK(sup_norm(delta - f) < 1e-14);
}

TEST_CASE("cross_covariance equals the covariance operator applied to the slope") {
  // Y_i = <f, X_i> with X centered: Delta = Gamma f by quadrature
  const Eigen::Index n = 30, m = 25;
  auto panel = matern_panel(n, m, 77);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
  for (const auto& x : panel) mean += x.values();
  mean /= static_cast<double>(n);
  for (auto& x : panel) x = GridFunction(x.values() - mean);

  const GridFunction f = GridFunction::sample(m, [](double u) { return u * u - 0.3; });
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = inner_product(f, panel[i], Space::L2);
  const Dataset data(panel, y);

  const GridFunction delta = cross_covariance(data);
  const CovarianceOperator op = sample_covariance(panel, Space::L2);
  const Eigen::VectorXd w = quadrature_weights(m);
  const Eigen::VectorXd direct = op.kernel * w.cwiseProduct(f.values());
  CHECK((delta.values() - direct).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("noiseless in-span data interpolates with zero residuals") {
  const Eigen::Index n = 40, m = 30, J = 3;
  const auto panel = matern_panel(n, m, 11);
  for (const Space space : {Space::L2, Space::W12}) {
    auto es = std::make_shared<const EigenSystem>(
        eigen_decompose(sample_covariance(panel, space)));
    // slope inside the fitted span
    GridFunction beta = GridFunction(es->basis().leftCols(J) *
                                     Eigen::Vector3d(0.8, -0.4, 0.2));
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = inner_product(beta, panel[i], space);
    const Dataset data(panel, y);

    const FpcrFit fit = fit_fpcr(data, J, es);
    CHECK(fit.residuals.cwiseAbs().maxCoeff() < 1e-8);
    CHECK(sup_norm(fit.beta_hat - beta) < 1e-7);

    const FpcrFit ls = fit_fpcr_leastsquares(data, J, es);
    CHECK(ls.residuals.cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("spectral and least-squares paths agree on random instances") {
  RandomStream rng(2025);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index n = 20 + static_cast<Eigen::Index>(rng.uniform_index(60));
    const Eigen::Index m = 20 + static_cast<Eigen::Index>(rng.uniform_index(20));
    const Eigen::Index J = 1 + static_cast<Eigen::Index>(rng.uniform_index(6));
    const Space space = trial % 2 == 0 ? Space::L2 : Space::W12;
    auto panel = matern_panel(n, m, 4000 + trial);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = rng.normal();
    const Dataset data(panel, y);

    auto es = std::make_shared<const EigenSystem>(
        eigen_decompose(sample_covariance(panel, space)));
    const FpcrFit a = fit_fpcr(data, J, es);
    const FpcrFit b = fit_fpcr_leastsquares(data, J, es);
    CHECK((a.coefficients - b.coefficients).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(a.intercept == doctest::Approx(b.intercept).epsilon(1e-8));
  }
}

TEST_CASE("score covariance is diagonal with the eigenvalues on the diagonal") {
  const Eigen::Index n = 35, m = 25, J = 5;
  const auto panel = matern_panel(n, m, 123);
  for (const Space space : {Space::L2, Space::W12}) {
    const EigenSystem es = eigen_decompose(sample_covariance(panel, space));
    Eigen::MatrixXd scores(n, J);
    Eigen::VectorXd x_mean = Eigen::VectorXd::Zero(m);
    for (const auto& x : panel) x_mean += x.values();
    x_mean /= static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      scores.row(i) = es.project(panel[i].values() - x_mean, J).transpose();
    }
    const Eigen::MatrixXd cov = scores.transpose() * scores / static_cast<double>(n);
    for (Eigen::Index j = 0; j < J; ++j) {
      for (Eigen::Index k = 0; k < J; ++k) {
        const double expected = j == k ? es.eigenvalues()[j] : 0.0;
        CHECK(std::abs(cov(j, k) - expected) < 1e-8);
      }
    }
  }
}

TEST_CASE("J=1 least squares reduces to the simple regression slope") {
  const Eigen::Index n = 25, m = 20;
  const auto panel = matern_panel(n, m, 55);
  RandomStream rng(56);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = rng.normal();
  const Dataset data(panel, y);

  auto es = std::make_shared<const EigenSystem>(
      eigen_decompose(sample_covariance(panel, Space::L2)));
  const FpcrFit fit = fit_fpcr_leastsquares(data, 1, es);
  const GridFunction delta = cross_covariance(data);
  const double expected =
      inner_product(delta, es->eigenfunction(0), Space::L2) / es->eigenvalues()[0];
  CHECK(fit.coefficients[0] == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("null model coefficients shrink at the root-n rate") {
  // Y independent of X: |coef_j| < 5 / sqrt(n gamma_j) with large probability
  const Eigen::Index n = 400, m = 30, J = 4;
  const auto panel = matern_panel(n, m, 99);
  RandomStream rng(100);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = rng.normal();
  const FpcrFit fit = fit_fpcr(Dataset(panel, y), J, Space::L2);
  for (Eigen::Index j = 0; j < J; ++j) {
    const double bound = 5.0 / std::sqrt(static_cast<double>(n) * fit.eigensystem->eigenvalues()[j]);
    CHECK(std::abs(fit.coefficients[j]) < bound);
  }
}

TEST_CASE("residuals are centered and beta_hat stays in span") {
  const Eigen::Index n = 30, m = 25, J = 3;
  const auto panel = matern_panel(n, m, 61);
  RandomStream rng(62);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = 2.0 * rng.normal() + 1.0;
  const Dataset data(panel, y);
  const FpcrFit fit = fit_fpcr(data, J, Space::L2);

  const double sd = std::sqrt((y.array() - y.mean()).square().sum() / n);
  CHECK(std::abs(fit.residuals.sum()) < 1e-10 * n * sd);

  const GridFunction projected = pseudo_power_apply(*fit.eigensystem, 0.0, J, fit.beta_hat);
  CHECK(norm(fit.beta_hat - projected, Space::L2) < 1e-10);
}

TEST_CASE("scaling the responses scales the fit linearly") {
  const Eigen::Index n = 25, m = 20, J = 3;
  const auto panel = matern_panel(n, m, 81);
  RandomStream rng(82);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = rng.normal();

  auto es = std::make_shared<const EigenSystem>(
      eigen_decompose(sample_covariance(panel, Space::L2)));
  const FpcrFit base = fit_fpcr(Dataset(panel, y), J, es);
  const double k = -3.5;
  const FpcrFit scaled = fit_fpcr(Dataset(panel, (k * y).eval()), J, es);

  for (Eigen::Index j = 0; j < J; ++j) {
    CHECK(scaled.coefficients[j] == doctest::Approx(k * base.coefficients[j]).epsilon(1e-12));
  }
  CHECK((scaled.residuals - k * base.residuals).cwiseAbs().maxCoeff() <
        1e-12 * std::max(1.0, sup_norm(GridFunction(k * base.residuals))));
  CHECK(sup_norm(scaled.beta_hat - k * base.beta_hat) < 1e-12 * std::abs(k) + 1e-13);
}

TEST_CASE("rank guard names the offending eigenvalue") {
  const Eigen::Index m = 15;
  // two curves span a one-dimensional centered space: rank 1
  const GridFunction f = GridFunction::sample(m, [](double u) { return u; });
  const GridFunction g = GridFunction::sample(m, [](double u) { return 2.0 * u; });
  Eigen::VectorXd y(2);
  y << 0.0, 1.0;
  const Dataset data({f, g}, y);
  CHECK_THROWS_AS(fit_fpcr(data, 2, Space::L2), SingularDesignError);
  CHECK_THROWS_AS(fit_fpcr_leastsquares(data, 2, Space::L2), SingularDesignError);
  CHECK_NOTHROW(fit_fpcr(data, 1, Space::L2));
}

TEST_CASE("refits share the eigensystem object") {
  const Eigen::Index n = 20, m = 15;
  const auto panel = matern_panel(n, m, 71);
  RandomStream rng(72);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = rng.normal();
  const FpcrFit first = fit_fpcr(Dataset(panel, y), 2, Space::L2);
  const FpcrFit second = fit_fpcr(Dataset(panel, (2.0 * y).eval()), 2, first.eigensystem);
  CHECK(first.eigensystem.get() == second.eigensystem.get());
}
