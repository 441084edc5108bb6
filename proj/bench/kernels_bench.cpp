// Serial reference kernels against their OpenMP versions on passing inputs,
// so every scan runs to completion.

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "qk/finite_group.hpp"
#include "qk/kernels.hpp"
#include "qk/quandle.hpp"

namespace {

std::vector<std::uint32_t> flat_table(std::int64_t m, std::int64_t n) {
  const auto q = qk::affine_cyclic(m, n).quandle;
  return {q.flat().begin(), q.flat().end()};
}

qk::Exec exec_of(const benchmark::State& state) { return state.range(1) ? qk::Exec::Parallel : qk::Exec::Serial; }

void BM_LeftDistributivity(benchmark::State& state) {
  const auto m = state.range(0);
  const auto table = flat_table(m, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qk::find_ld_violation(m, table, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * m * m * m);
}

void BM_CocycleCondition(benchmark::State& state) {
  const auto m = state.range(0);
  const auto table = flat_table(m, 2);
  const auto g = qk::FiniteGroup::symmetric(3);
  const std::vector<std::uint32_t> gmul(g.table().begin(), g.table().end());
  const std::vector<std::uint32_t> beta(m * m, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qk::find_cc_violation(m, table, g.order(), gmul, beta, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * m * m * m);
}

void BM_DynamicalCocycle(benchmark::State& state) {
  const auto m = state.range(0);
  const std::size_t fiber = 4;
  const auto table = flat_table(m, 2);
  std::vector<std::uint32_t> beta;
  beta.reserve(m * m * fiber * fiber);
  for (std::int64_t i = 0; i < m * m * static_cast<std::int64_t>(fiber); ++i) {
    for (std::uint32_t t = 0; t < fiber; ++t) beta.push_back(t);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(qk::find_dynamical_violation(m, table, fiber, beta, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * m * m * m * fiber * fiber);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (std::int64_t m : {31, 101, 211}) {
    for (std::int64_t parallel : {0, 1}) b->Args({m, parallel});
  }
  b->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_LeftDistributivity)->Apply(sizes);
BENCHMARK(BM_CocycleCondition)->Apply(sizes);
BENCHMARK(BM_DynamicalCocycle)->Apply(sizes);

BENCHMARK_MAIN();
