#include "fpcr/simulation.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <vector>

#include "fpcr/parallel.hpp"
#include "fpcr/special_functions.hpp"

namespace fpcr {

const char* slope_kind_name(SlopeKind kind) {
  switch (kind) {
    case SlopeKind::kSparsest: return "sparsest";
    case SlopeKind::kSparse: return "sparse";
    case SlopeKind::kDense: return "dense";
    case SlopeKind::kDensest: return "densest";
  }
  return "unknown";
}

SlopeKind parse_slope_kind(const std::string& name) {
  if (name == "sparsest") return SlopeKind::kSparsest;
  if (name == "sparse") return SlopeKind::kSparse;
  if (name == "dense") return SlopeKind::kDense;
  if (name == "densest") return SlopeKind::kDensest;
  throw DomainError("unknown slope kind '" + name + "'");
}

Space parse_space(const std::string& name) {
  if (name == "l2" || name == "L2") return Space::L2;
  if (name == "w12" || name == "W12") return Space::W12;
  throw DomainError("unknown space '" + name + "' (expected l2 or w12)");
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw PreconditionError("config: n must be at least 2");
  if (cfg.m < 2) throw PreconditionError("config: grid size m must be at least 2");
  if (cfg.c < 0.0) throw PreconditionError("config: c must be nonnegative");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
    throw PreconditionError("config: alpha must lie in (0,1]");
  }
  if (cfg.B < 1) throw PreconditionError("config: B must be positive");
  if (cfg.reps < 1) throw PreconditionError("config: reps must be positive");
  if (!(cfg.fve_threshold > 0.0 && cfg.fve_threshold < 1.0)) {
    throw PreconditionError("config: fve_threshold must lie in (0,1)");
  }
  if (cfg.j_max < 1) throw PreconditionError("config: j_max must be positive");
  if (!(cfg.matern.sigma2 > 0.0 && cfg.matern.rho > 0.0 && cfg.matern.nu > 0.0)) {
    throw PreconditionError("config: Matern parameters must be positive");
  }
}

double matern_kernel(double u1, double u2, const MaternParams& p) {
  const double distance = std::abs(u1 - u2);
  const double arg = std::sqrt(2.0 * p.nu) * distance / p.rho;
  if (arg < 1e-12) return p.sigma2;  // d -> 0 limit
  const double prefactor = p.sigma2 * std::pow(2.0, 1.0 - p.nu) / std::tgamma(p.nu);
  return prefactor * std::pow(arg, p.nu) * bessel_k(p.nu, arg);
}

Eigen::MatrixXd matern_kernel_matrix(Eigen::Index m, const MaternParams& p) {
  const Eigen::VectorXd u = grid_points(m);
  Eigen::MatrixXd kernel(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    kernel(j, j) = p.sigma2;
    for (Eigen::Index k = 0; k < j; ++k) {
      const double value = matern_kernel(u[j], u[k], p);
      kernel(j, k) = value;
      kernel(k, j) = value;
    }
  }
  return kernel;
}

CovarianceOperator matern_covariance_operator(Eigen::Index m, const MaternParams& p,
                                              Space space) {
  return CovarianceOperator(matern_kernel_matrix(m, p), GridFunction::zero(m), space, 0);
}

Eigen::MatrixXd gp_cholesky_factor(const Eigen::MatrixXd& kernel, double sigma2) {
  double jitter = 0.0;
  for (;;) {
    Eigen::MatrixXd attempt = kernel;
    if (jitter > 0.0) {
      attempt.diagonal().array() += jitter;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(attempt);
    if (llt.info() == Eigen::Success) {
      return llt.matrixL();
    }
    if (jitter == 0.0) {
      jitter = 1e-10 * sigma2;
    } else if (jitter < 1e-6 * sigma2) {
      jitter = std::min(2.0 * jitter, 1e-6 * sigma2);
    } else {
      throw NumericalError("gp_cholesky_factor: factorization failed even with jitter " +
                           std::to_string(jitter));
    }
  }
}

GridFunction sample_gp(const Eigen::MatrixXd& chol_factor, RandomStream& rng) {
  Eigen::VectorXd z(chol_factor.rows());
  for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = rng.normal();
  return GridFunction(chol_factor * z);
}

double laplace_from_uniform(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("laplace_from_uniform requires u in (0,1)");
  }
  const double scale = 1.0 / std::sqrt(2.0);  // unit variance
  return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
}

double laplace_error(RandomStream& rng) { return laplace_from_uniform(rng.uniform01()); }

GridFunction trig_basis(Eigen::Index j, Eigen::Index m) {
  if (j < 1) {
    throw PreconditionError("trig_basis requires j >= 1");
  }
  if (j == 1) return GridFunction::constant(m, 1.0);
  const double sqrt2 = std::sqrt(2.0);
  const double frequency = 2.0 * M_PI * static_cast<double>(j / 2);
  if (j % 2 == 0) {
    return GridFunction::sample(m, [&](double u) { return sqrt2 * std::sin(frequency * u); });
  }
  return GridFunction::sample(m, [&](double u) { return sqrt2 * std::cos(frequency * u); });
}

GridFunction make_slope(SlopeKind kind, double c, Eigen::Index m) {
  switch (kind) {
    case SlopeKind::kSparsest:
      return GridFunction::constant(m, c);
    case SlopeKind::kSparse:
    case SlopeKind::kDense: {
      const Eigen::Index terms = kind == SlopeKind::kSparse ? 3 : 100;
      Eigen::VectorXd values = Eigen::VectorXd::Zero(m);
      for (Eigen::Index j = 1; j <= terms; ++j) {
        const double weight = (11.0 / 4.0) / static_cast<double>(j + 2);
        values += weight * trig_basis(j, m).values();
      }
      return GridFunction(c * values);
    }
    case SlopeKind::kDensest:
      return GridFunction::sample(
          m, [&](double u) { return c * 1.5 * u * u * std::exp(u); });
  }
  throw DomainError("make_slope: unknown slope kind");
}

Dataset generate_dataset(const ExperimentConfig& cfg, RandomStream& gp_rng,
                         RandomStream& error_rng) {
  validate_config(cfg);
  const Eigen::MatrixXd chol =
      gp_cholesky_factor(matern_kernel_matrix(cfg.m, cfg.matern), cfg.matern.sigma2);
  const GridFunction slope = make_slope(cfg.slope_kind, cfg.c, cfg.m);

  std::vector<GridFunction> curves;
  curves.reserve(cfg.n);
  Eigen::VectorXd responses(cfg.n);
  for (Eigen::Index i = 0; i < cfg.n; ++i) {
    curves.push_back(sample_gp(chol, gp_rng));
    // the model's pairing <slope, X_i> uses the plain integral inner product
    responses[i] = inner_product(slope, curves.back(), Space::L2) + laplace_error(error_rng);
  }
  return Dataset(std::move(curves), std::move(responses));
}

Dataset generate_dataset_for_rep(const ExperimentConfig& cfg, int rep) {
  RandomStream gp_rng = RandomStream::derive(cfg.seed, rep, StreamRole::kGaussianProcess);
  RandomStream error_rng = RandomStream::derive(cfg.seed, rep, StreamRole::kError);
  return generate_dataset(cfg, gp_rng, error_rng);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int n_threads) {
  validate_config(cfg);
  const int reps = cfg.reps;
  std::vector<int> reject_sq(reps, 0), reject_sup(reps, 0), failed(reps, 0);
  std::vector<Eigen::Index> selected(reps, 0);

  const FveConfig fve{cfg.fve_threshold, cfg.j_max};
  parallel_for_indexed(static_cast<std::size_t>(reps), n_threads, [&](std::size_t r) {
    const int rep = static_cast<int>(r);
    try {
      const Dataset data = generate_dataset_for_rep(cfg, rep);
      const std::uint64_t test_seed =
          RandomStream::derive_seed(cfg.seed, rep, StreamRole::kBootstrap);
      const TestOutcome outcome =
          significance_test(data, cfg.alpha, cfg.B, cfg.space, fve, test_seed, 1);
      reject_sq[rep] = outcome.reject_sq ? 1 : 0;
      reject_sup[rep] = outcome.reject_sup ? 1 : 0;
      selected[rep] = outcome.J;
    } catch (const Error&) {
      failed[rep] = 1;
    }
  });

  int n_failed = 0;
  for (int f : failed) n_failed += f;
  if (static_cast<double>(n_failed) > 0.01 * static_cast<double>(reps)) {
    throw ExcessiveFailureError("run_experiment: " + std::to_string(n_failed) + " of " +
                                std::to_string(reps) + " replicates failed");
  }
  const int n_ok = reps - n_failed;
  double sum_sq = 0.0, sum_sup = 0.0, sum_j = 0.0;
  for (int r = 0; r < reps; ++r) {
    if (failed[r]) continue;
    sum_sq += reject_sq[r];
    sum_sup += reject_sup[r];
    sum_j += static_cast<double>(selected[r]);
  }
  const double rate_sq = sum_sq / n_ok;
  const double rate_sup = sum_sup / n_ok;
  auto binomial_se = [n_ok](double p) { return std::sqrt(p * (1.0 - p) / n_ok); };
  return ExperimentResult{cfg,
                          rate_sq,
                          rate_sup,
                          binomial_se(rate_sq),
                          binomial_se(rate_sup),
                          sum_j / n_ok,
                          n_failed};
}

}  // namespace fpcr
