// Acceptance suite: one pass/fail line per criterion, each pinned to its
// stated tolerance. Run all criteria with no arguments, or a single one
// with --criterion N.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dataset_io.hpp"
#include "fpcr/metrics.hpp"
#include "fpcr/parallel.hpp"
#include "fpcr/validation.hpp"

using namespace fpcr;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20260811;

struct CriterionResult {
  bool passed;
  std::string detail;
};

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CriterionResult criterion_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const double discrepancy = equivalence_max_discrepancy(200, kSeed);
  const double elapsed = seconds_since(start);
  const bool passed = discrepancy < 1e-8 && elapsed < 10.0;
  return {passed, "max coefficient discrepancy " + fmt(discrepancy) +
                      " over 200 instances (limit 1e-8), " + fmt(elapsed) + " s (limit 10)"};
}

CriterionResult criterion_variance_identity() {
  const auto start = std::chrono::steady_clock::now();
  std::string detail = "MC/exact ratios over 20000 draws:";
  bool passed = true;
  for (const Eigen::Index J : {1, 3, 5}) {
    const double ratio = variance_identity_ratio(50, J, 20000, kSeed + J);
    passed = passed && ratio >= 0.97 && ratio <= 1.03;
    detail += " J=" + std::to_string(J) + ": " + fmt(ratio);
  }
  const double elapsed = seconds_since(start);
  passed = passed && elapsed < 30.0;
  detail += " (limits [0.97,1.03]), " + fmt(elapsed) + " s (limit 30)";
  return {passed, detail};
}

CriterionResult criterion_sobolev() {
  const auto start = std::chrono::steady_clock::now();
  const double slack = sobolev_embedding_min_slack(1000, 50, kSeed);
  const double elapsed = seconds_since(start);
  const bool passed = slack >= 0.0 && elapsed < 5.0;
  return {passed, "min slack " + fmt(slack) + " over 1000 mixtures (must be >= 0), " +
                      fmt(elapsed) + " s (limit 5)"};
}

CriterionResult criterion_chi_square_mode() {
  const auto start = std::chrono::steady_clock::now();
  const double error = chi_square_mode_max_error({5, 10, 50});
  const double variation = chi_square_mode_scaling_variation();
  const double elapsed = seconds_since(start);
  const bool passed = error < 1e-6 && variation < 0.02 && elapsed < 5.0;
  return {passed, "max density error " + fmt(error) + " (limit 1e-6), sqrt(J) M_J variation " +
                      fmt(variation) + " (limit 0.02), " + fmt(elapsed) + " s (limit 5)"};
}

CriterionResult criterion_shrinkage() {
  const auto start = std::chrono::steady_clock::now();
  int improved = 0;
  std::string detail = "W2(n=400) < W2(n=100):";
  std::vector<ShrinkageResult> results(10);
  parallel_for_indexed(10, default_thread_count(), [&](std::size_t rep) {
    results[rep] = gaussian_reference_shrinkage(100, 400, 256, 3, 0.4, kSeed + 100 + rep);
  });
  for (int rep = 0; rep < 10; ++rep) {
    if (results[rep].w2_large_n < results[rep].w2_small_n) ++improved;
  }
  const double elapsed = seconds_since(start);
  const bool passed = improved >= 8 && elapsed < 300.0;
  detail += " " + std::to_string(improved) + "/10 seeds (need >= 8), " + fmt(elapsed) +
            " s (limit 300)";
  return {passed, detail};
}

CriterionResult criterion_calibration() {
  const auto start = std::chrono::steady_clock::now();
  int below = 0;
  double worst = 0.0;
  std::vector<double> distances(10);
  parallel_for_indexed(10, default_thread_count(), [&](std::size_t rep) {
    distances[rep] = bootstrap_calibration_ks(200, 256, kSeed + 200 + rep);
  });
  for (int rep = 0; rep < 10; ++rep) {
    if (distances[rep] < 0.15) ++below;
    worst = std::max(worst, distances[rep]);
  }
  const double elapsed = seconds_since(start);
  const bool passed = below >= 8 && elapsed < 300.0;
  return {passed, "KS < 0.15 in " + std::to_string(below) + "/10 seeds (need >= 8), worst " +
                      fmt(worst) + ", " + fmt(elapsed) + " s (limit 300)"};
}

ExperimentConfig rejection_config(double c) {
  ExperimentConfig cfg;
  cfg.n = 50;
  cfg.m = 50;
  cfg.c = c;
  cfg.slope_kind = SlopeKind::kSparsest;
  cfg.space = Space::L2;
  cfg.alpha = 0.05;
  cfg.B = 500;
  cfg.reps = 500;
  cfg.fve_threshold = 0.75;
  cfg.j_max = 20;
  cfg.seed = kSeed;
  return cfg;
}

CriterionResult criterion_size() {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult result = run_experiment(rejection_config(0.0), default_thread_count());
  const double elapsed = seconds_since(start);
  const bool passed = result.reject_rate_sq >= 0.02 && result.reject_rate_sq <= 0.08 &&
                      result.reject_rate_sup >= 0.02 && result.reject_rate_sup <= 0.08;
  return {passed, "empirical size s_sq " + fmt(result.reject_rate_sq) + ", s_sup " +
                      fmt(result.reject_rate_sup) + " (limits [0.02,0.08]), " + fmt(elapsed) +
                      " s (target 1800)"};
}

CriterionResult criterion_power() {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult result = run_experiment(rejection_config(0.4), default_thread_count());
  const double elapsed = seconds_since(start);
  const bool passed = result.reject_rate_sq > 0.4 && result.reject_rate_sup > 0.4;
  return {passed, "empirical power s_sq " + fmt(result.reject_rate_sq) + ", s_sup " +
                      fmt(result.reject_rate_sup) + " (must exceed 0.4), " + fmt(elapsed) +
                      " s (target 1800)"};
}

// factorial oracle, independent of the assignment solver
double brute_force_min_cost(const Eigen::MatrixXd& cost) {
  std::vector<Eigen::Index> perm(cost.rows());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (Eigen::Index i = 0; i < cost.rows(); ++i) total += cost(i, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CriterionResult criterion_wasserstein_oracle() {
  const auto start = std::chrono::steady_clock::now();
  RandomStream rng(kSeed + 300);
  const Eigen::Index n = 8, m = 12;
  double worst = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    std::vector<GridFunction> a, b;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::VectorXd va(m), vb(m);
      for (Eigen::Index k = 0; k < m; ++k) {
        va[k] = rng.normal();
        vb[k] = rng.normal() + 0.2;
      }
      a.emplace_back(va);
      b.emplace_back(vb);
    }
    const FunctionSample sa(a, Space::L2), sb(b, Space::L2);
    const Eigen::MatrixXd gram = gram_matrix(m, Space::L2);
    Eigen::MatrixXd cost(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::VectorXd diff = a[i].values() - b[j].values();
        cost(i, j) = diff.transpose() * gram * diff;
      }
    }
    const double solver = wasserstein2_hilbert(sa, sb);
    const double oracle = std::sqrt(brute_force_min_cost(cost) / static_cast<double>(n));
    worst = std::max(worst, std::abs(solver - oracle));
  }
  const double gaussian_error = wasserstein_gaussian_closed_form_error(20000, kSeed + 301);
  const double elapsed = seconds_since(start);
  const bool passed = worst < 1e-10 && gaussian_error < 0.05 && elapsed < 30.0;
  return {passed, "max |solver - brute force| " + fmt(worst) +
                      " over 50 pairs (limit 1e-10), Gaussian closed-form error " +
                      fmt(gaussian_error) + " (limit 0.05), " + fmt(elapsed) + " s (limit 30)"};
}

CriterionResult criterion_determinism() {
  const fs::path dir = fs::temp_directory_path() / "fpcr_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path config = dir / "config.json";
  {
    std::ofstream out(config);
    out << R"({
      "n": 30,
      "c": [0.0, 0.4],
      "slope_kind": ["sparsest", "sparse"],
      "grid_size": 20,
      "B": 50,
      "reps": 16,
      "seed": 4242
    })";
  }
  const cli::SimulateArgs first{config, dir / "a", 1};
  const cli::SimulateArgs second{config, dir / "b", 4};
  if (cli::cmd_simulate(first) != cli::kExitOk || cli::cmd_simulate(second) != cli::kExitOk) {
    return {false, "simulate runs did not both exit 0"};
  }
  auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const std::string csv_a = slurp(dir / "a" / "rejection_rates.csv");
  const std::string csv_b = slurp(dir / "b" / "rejection_rates.csv");
  const bool passed = !csv_a.empty() && csv_a == csv_b;
  return {passed, passed ? "repeated runs byte-identical (" +
                               std::to_string(csv_a.size()) + " bytes)"
                         : "CSV outputs differ between identical runs"};
}

struct Criterion {
  int number;
  const char* name;
  CriterionResult (*run)();
};

const Criterion kCriteria[] = {
    {1, "estimator equivalence", criterion_equivalence},
    {2, "variance identity", criterion_variance_identity},
    {3, "sobolev embedding", criterion_sobolev},
    {4, "chi-square mode density", criterion_chi_square_mode},
    {5, "gaussian reference shrinkage", criterion_shrinkage},
    {6, "bootstrap calibration", criterion_calibration},
    {7, "empirical size", criterion_size},
    {8, "empirical power", criterion_power},
    {9, "wasserstein oracle", criterion_wasserstein_oracle},
    {10, "simulate determinism", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    } else if (std::strcmp(argv[i], "--list") == 0) {
      for (const Criterion& criterion : kCriteria) {
        std::printf("%2d  %s\n", criterion.number, criterion.name);
      }
      return 0;
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N | --list]\n", argv[0]);
      return 2;
    }
  }

  int failures = 0;
  for (const Criterion& criterion : kCriteria) {
    if (only != 0 && criterion.number != only) continue;
    const CriterionResult result = criterion.run();
    std::printf("[%s] criterion %d: %s -- %s\n", result.passed ? "PASS" : "FAIL",
                criterion.number, criterion.name, result.detail.c_str());
    std::fflush(stdout);
    if (!result.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
