#include <benchmark/benchmark.h>

#include "fpcr/simulation.hpp"
#include "fpcr/special_functions.hpp"

namespace {

void BM_BesselK1(benchmark::State& state) {
  double x = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::bessel_k(1.0, x));
    x = x < 6.0 ? x + 0.37 : 0.01;
  }
}
BENCHMARK(BM_BesselK1);

void BM_MaternKernelMatrix(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::matern_kernel_matrix(state.range(0), fpcr::MaternParams{}));
  }
}
BENCHMARK(BM_MaternKernelMatrix)->Arg(50)->Arg(200);

void BM_SampleGp(benchmark::State& state) {
  const auto kernel = fpcr::matern_kernel_matrix(state.range(0), fpcr::MaternParams{});
  const auto chol = fpcr::gp_cholesky_factor(kernel, 1.0);
  fpcr::RandomStream rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::sample_gp(chol, rng));
  }
}
BENCHMARK(BM_SampleGp)->Arg(50)->Arg(200);

void BM_GenerateDataset(benchmark::State& state) {
  fpcr::ExperimentConfig cfg;
  cfg.n = state.range(0);
  cfg.c = 0.4;
  cfg.slope_kind = fpcr::SlopeKind::kSparse;
  cfg.seed = 9;
  int rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::generate_dataset_for_rep(cfg, rep++));
  }
}
BENCHMARK(BM_GenerateDataset)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
