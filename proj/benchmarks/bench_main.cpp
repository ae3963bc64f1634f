#include <benchmark/benchmark.h>

#include <random>

#include "thermowiener/capacity.hpp"
#include "thermowiener/domain.hpp"
#include "thermowiener/lp.hpp"
#include "thermowiener/pde.hpp"
#include "thermowiener/sampling.hpp"
#include "thermowiener/wiener.hpp"

namespace tw = thermowiener;

namespace {

void BM_GaussianKernel(benchmark::State& state) {
  const tw::GaussianKernel k(tw::MetricSpace::euclidean(static_cast<int>(state.range(0))), 0.25);
  const int n = static_cast<int>(state.range(0));
  tw::SpaceTimePoint z{tw::SpacePoint(n), 0.1}, w{tw::SpacePoint(n), 0.0};
  z.x[0] = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(k(z, w));
}
BENCHMARK(BM_GaussianKernel)->Arg(1)->Arg(3);

void BM_HeisenbergKernel(benchmark::State& state) {
  const tw::GaussianKernel k(tw::MetricSpace::heisenberg(), 0.25);
  const tw::SpaceTimePoint z{{0.1, -0.2, 0.05}, 0.1}, w{{0.0, 0.0, 0.0}, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(k(z, w));
}
BENCHMARK(BM_HeisenbergKernel);

// Packing LP on a random kernel-like matrix with n rows and columns.
void BM_SolvePacking(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> A(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A[static_cast<std::size_t>(i) * n + j] = i == j ? 2.0 : 0.3 * u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(tw::solve_packing(A, n, n, 1e-6).primal);
  state.SetComplexityN(n);
}
BENCHMARK(BM_SolvePacking)->RangeMultiplier(2)->Range(32, 256)->Complexity()->Unit(benchmark::kMillisecond);

void BM_RingCapacity(benchmark::State& state) {
  const tw::DomainSpec d = tw::find_benchmark("cone").make();
  const tw::Kernel k = tw::Kernel::gaussian(d.metric(), 0.25);
  const tw::RingSpec ring{0.25, 2, 3, tw::RingVariant::kOmega};
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tw::solve_capacity(tw::target_problem(d, ring, k, res)).value);
}
BENCHMARK(BM_RingCapacity)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_RingSampling(benchmark::State& state) {
  const tw::DomainSpec d = tw::find_benchmark("halfspace-time").make();
  const tw::RingSpec ring{0.25, 1, 2, tw::RingVariant::kOmega};
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tw::sample_set_and_measure(d, ring, res, false).size());
}
BENCHMARK(BM_RingSampling)->DenseRange(3, 7, 2);

void BM_WalkSolve(benchmark::State& state) {
  const tw::DomainSpec d = tw::find_benchmark("cylinder-top").make();
  tw::WalkConfig cfg;
  cfg.walkers = static_cast<int>(state.range(0));
  cfg.step = 1e-3;
  auto phi = [](const tw::SpaceTimePoint& z) { return z.x[0]; };
  for (auto _ : state) benchmark::DoNotOptimize(tw::pwb_solve(d, phi, {{0.1}, -0.1}, cfg).value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WalkSolve)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_InnerIntegral(benchmark::State& state) {
  const tw::DomainSpec d = tw::find_benchmark("cone").make();
  tw::QuadratureSpec q;
  q.resolution = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tw::inner_integral(d, 0.25, 0.5, 1e-3, q));
}
BENCHMARK(BM_InnerIntegral)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
