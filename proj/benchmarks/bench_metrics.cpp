#include <benchmark/benchmark.h>

#include <vector>

#include "fpcr/metrics.hpp"
#include "fpcr/random.hpp"

namespace {

fpcr::FunctionSample random_sample(Eigen::Index n, Eigen::Index m, std::uint64_t seed) {
  fpcr::RandomStream rng(seed);
  std::vector<fpcr::GridFunction> funcs;
  funcs.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v(m);
    for (Eigen::Index k = 0; k < m; ++k) v[k] = rng.normal();
    funcs.emplace_back(v);
  }
  return fpcr::FunctionSample(std::move(funcs), fpcr::Space::L2);
}

void BM_Wasserstein2Hilbert(benchmark::State& state) {
  const auto a = random_sample(state.range(0), 50, 1);
  const auto b = random_sample(state.range(0), 50, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::wasserstein2_hilbert(a, b));
  }
}
BENCHMARK(BM_Wasserstein2Hilbert)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Wasserstein2Scalar(benchmark::State& state) {
  fpcr::RandomStream rng(5);
  const Eigen::Index n = state.range(0);
  Eigen::VectorXd a(n), b(n);
  for (Eigen::Index i = 0; i < n; ++i) a[i] = rng.normal();
  for (Eigen::Index i = 0; i < n; ++i) b[i] = rng.normal();
  const fpcr::ScalarSample sa(a), sb(b);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fpcr::wasserstein2_1d(sa, sb));
  }
}
BENCHMARK(BM_Wasserstein2Scalar)->Arg(1000)->Arg(100000);

}  // namespace
