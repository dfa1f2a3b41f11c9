// Serial reference vs OpenMP for the parallel kernels.
//   ./bench_kernels --benchmark_filter=PowerIteration

#include <benchmark/benchmark.h>

#include <random>

#include "lpg/catalog.hpp"
#include "lpg/groupoid_algebra.hpp"
#include "lpg/weyl.hpp"

using namespace lpg;

namespace {

ExecutionPolicy policy_of(const benchmark::State& s) {
  return s.range(1) ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
}

FMatrix random_matrix(Eigen::Index n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> d;
  FMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {d(rng), d(rng)};
  return m;
}

void PowerIteration(benchmark::State& state) {
  const FMatrix a = random_matrix(state.range(0));
  PowerIterationConfig cfg;
  cfg.random_starts = 16;
  const ExecutionPolicy pol = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::power_iteration_starts(a, cfg, pol));
}
BENCHMARK(PowerIteration)->ArgsProduct({{16, 64}, {0, 1}})->ArgNames({"n", "omp"})->Unit(benchmark::kMillisecond);

void LambdaNorm(benchmark::State& state) {
  auto g = std::make_shared<const FiniteGroupoid>(
      transformation_groupoid(catalog::translation_action(catalog::symmetric_group3())));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<GaussRational> c(g->size());
  for (auto& x : c) x = GaussRational(Rational(d(rng)), Rational(d(rng)));
  const ConvElement f(g, c);
  NormOptions opts;
  opts.policy = policy_of(state);
  const PExponent p = PExponent::parse("3");
  for (auto _ : state) benchmark::DoNotOptimize(lambda_norm(f, p, opts));
}
BENCHMARK(LambdaNorm)->ArgsProduct({{0}, {0, 1}})->ArgNames({"n", "omp"})->Unit(benchmark::kMillisecond);

void WeylPair(benchmark::State& state) {
  const FiniteGroupoid g = catalog::pair_groupoid(static_cast<int>(state.range(0)));
  WeylOptions opts;
  opts.policy = policy_of(state);
  const PExponent p = PExponent::parse("3");
  for (auto _ : state) benchmark::DoNotOptimize(weyl_groupoid(g, p, opts));
}
BENCHMARK(WeylPair)->ArgsProduct({{3, 4}, {0, 1}})->ArgNames({"n", "omp"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
