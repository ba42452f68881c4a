#include <benchmark/benchmark.h>

#include "klkit/bounds.hpp"
#include "klkit/kernel.hpp"

namespace {

using klkit::EvaluationPoint;

const EvaluationPoint kPoints[] = {{0.1, 0.5}, {1.0, 1.0}, {5.0, 10.0}, {50.0, 40.0}};

void BM_Oracle(benchmark::State& state) {
  const auto& p = kPoints[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(klkit::k_itau_oracle(p));
}
BENCHMARK(BM_Oracle)->DenseRange(0, 3);

void BM_KeyFormula(benchmark::State& state) {
  const EvaluationPoint p(2.0, 5.0);
  const auto N = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(klkit::k_itau_keyformula(p, N));
}
BENCHMARK(BM_KeyFormula)->Arg(0)->Arg(2)->Arg(4);

void BM_DefSeries(benchmark::State& state) {
  const auto& p = kPoints[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(klkit::k_itau_defseries(p));
}
BENCHMARK(BM_DefSeries)->DenseRange(0, 2);

void BM_Dispatch(benchmark::State& state) {
  const auto& p = kPoints[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(klkit::k_itau(p));
}
BENCHMARK(BM_Dispatch)->DenseRange(0, 3);

void BM_ComplexOrder(benchmark::State& state) {
  const klkit::OrderSpec o(0.5, 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(klkit::k_complex_order(o, 1.0));
}
BENCHMARK(BM_ComplexOrder);

void BM_CertifyLebedev(benchmark::State& state) {
  const auto d = klkit::make_descriptor(klkit::BoundId::LEBEDEV_15);
  const auto grid = klkit::log_grid(0.01, 100.0, 10, 0.1, 40.0, 10);
  for (auto _ : state) benchmark::DoNotOptimize(klkit::certify_bound(d, grid));
}
BENCHMARK(BM_CertifyLebedev)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
