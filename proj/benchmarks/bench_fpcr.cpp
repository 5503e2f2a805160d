#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "fpcr/inference.hpp"
#include "fpcr/simulation.hpp"

namespace {

fpcr::Dataset make_data(Eigen::Index n, Eigen::Index m) {
  fpcr::ExperimentConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.c = 0.4;
  cfg.slope_kind = fpcr::SlopeKind::kSparse;
  cfg.seed = 7;
  return fpcr::generate_dataset_for_rep(cfg, 0);
}

void BM_EigenDecompose(benchmark::State& state) {
  const auto data = make_data(state.range(0), 50);
  const auto cov = fpcr::sample_covariance(data.x, fpcr::Space::L2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::eigen_decompose(cov));
  }
}
BENCHMARK(BM_EigenDecompose)->Arg(50)->Arg(200);

void BM_FitFpcr(benchmark::State& state) {
  const auto data = make_data(state.range(0), 50);
  auto es = std::make_shared<const fpcr::EigenSystem>(
      fpcr::eigen_decompose(fpcr::sample_covariance(data.x, fpcr::Space::L2)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::fit_fpcr(data, 3, es));
  }
}
BENCHMARK(BM_FitFpcr)->Arg(50)->Arg(200);

void BM_BootstrapReplicate(benchmark::State& state) {
  const auto data = make_data(state.range(0), 50);
  const auto fit = fpcr::fit_fpcr(data, 3, fpcr::Space::L2);
  fpcr::RandomStream rng(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::bootstrap_replicate(fit, data, rng));
  }
}
BENCHMARK(BM_BootstrapReplicate)->Arg(50)->Arg(200);

void BM_SignificanceTest(benchmark::State& state) {
  const auto data = make_data(50, 50);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fpcr::significance_test(data, 0.05, state.range(0), fpcr::Space::L2, {}, 11, 1));
  }
}
BENCHMARK(BM_SignificanceTest)->Arg(200)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
