#include <benchmark/benchmark.h>

#include <random>

#include "pseudospline/analysis.hpp"
#include "pseudospline/frames.hpp"

namespace {

using namespace pseudospline;

PseudoSplineOrder order_for(int index) {
  switch (index) {
    case 0: return PseudoSplineOrder(1.0, 0);
    case 1: return PseudoSplineOrder(3.5, 2);
    default: return PseudoSplineOrder(Complex(3.2, 1.0), 2);
  }
}

void BM_SampleH0(benchmark::State& state) {
  const PseudoSplineOrder order = order_for(1);
  const TorusGrid grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_H0(order, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleH0)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_Cascade(benchmark::State& state) {
  const PseudoSplineOrder order = order_for(static_cast<int>(state.range(0)));
  CascadeOptions opt;
  opt.stop_on_convergence = false;
  for (auto _ : state) benchmark::DoNotOptimize(run_cascade(order, opt));
}
BENCHMARK(BM_Cascade)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_BuildBank(benchmark::State& state) {
  const PseudoSplineOrder order = order_for(static_cast<int>(state.range(0)));
  const TorusGrid grid(4096);
  for (auto _ : state) benchmark::DoNotOptimize(build_bank(order, grid));
}
BENCHMARK(BM_BuildBank)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_AnalyzeSynthesize(benchmark::State& state) {
  const FrameletBank bank = build_bank(order_for(1), TorusGrid(4096));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Complex> f(static_cast<std::size_t>(state.range(0)));
  for (Complex& c : f) c = {g(rng), g(rng)};
  const PeriodicSignal signal(f);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(bank, analyze(bank, signal)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AnalyzeSynthesize)->RangeMultiplier(4)->Range(1 << 8, 1 << 14);

void BM_FullReport(benchmark::State& state) {
  const PseudoSplineOrder order = order_for(1);
  for (auto _ : state) benchmark::DoNotOptimize(full_report(order));
}
BENCHMARK(BM_FullReport)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
