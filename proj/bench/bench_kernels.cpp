// Serial reference path (workers = 1) against the OpenMP path on the
// data-parallel kernels. Pass --benchmark_filter to narrow the run.
#include <benchmark/benchmark.h>

#include "canon/invariant.hpp"
#include "canon/oracles.hpp"
#include "canon/rigidity.hpp"
#include "canon/separator.hpp"

namespace {

using namespace canon;

ColoredGraph partial_two_tree(std::size_t n) { return gen_family(Family::partial_k_tree, {n, 2, {}, {}}, 12345); }

void BM_SeparatorCanon(benchmark::State& state) {
  const ColoredGraph g = partial_two_tree(static_cast<std::size_t>(state.range(0)));
  CanonOptions options;
  options.exec = Exec{static_cast<int>(state.range(1))};
  const InvariantBackend f = InvariantBackend::wlk(2);
  for (auto _ : state) benchmark::DoNotOptimize(canon_separator(g, 3, f, options));
  state.SetLabel("workers=" + std::to_string(state.range(1)));
}
BENCHMARK(BM_SeparatorCanon)->ArgsProduct({{12, 16}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_MarkSeparatingSequences(benchmark::State& state) {
  const ColoredGraph g = partial_two_tree(static_cast<std::size_t>(state.range(0)));
  const Exec exec{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(mark_separating_sequences(g, 3, exec));
}
BENCHMARK(BM_MarkSeparatingSequences)->ArgsProduct({{24, 40}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_WlkRefine(benchmark::State& state) {
  const ColoredGraph g = gen_family(Family::random_gnp, {static_cast<std::size_t>(state.range(0)), 2, 0.3, {}}, 7);
  RefineOptions options;
  options.exec = Exec{static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(wlk_refine(g, 3, options));
}
BENCHMARK(BM_WlkRefine)->ArgsProduct({{16, 24}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_RigidityCanon(benchmark::State& state) {
  const ColoredGraph g = gen_family(Family::random_gnp, {static_cast<std::size_t>(state.range(0)), 2, 0.4, {}}, 3);
  CanonOptions options;
  options.exec = Exec{static_cast<int>(state.range(1))};
  const InvariantBackend f = InvariantBackend::wl1();
  for (auto _ : state) benchmark::DoNotOptimize(canon_rigidity(g, 2, f, options));
}
BENCHMARK(BM_RigidityCanon)->ArgsProduct({{14, 20}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
