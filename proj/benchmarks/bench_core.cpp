#include <cmath>

#include <benchmark/benchmark.h>

#include "strebel/pipeline.hpp"

using strebel::cplx;

namespace {

strebel::QuadDifferential running() {
  return strebel::make_differential({1.0, -1.0, 0.0}, {1.0, -1.0, std::sqrt(2.0)});
}

strebel::ClosedCurve outer_curve(const strebel::QuadDifferential& qd) {
  for (auto& c : strebel::find_components(qd, 9.0))
    if (c.enclosed_poles.size() == qd.size()) return c;
  throw std::runtime_error("outer component missing");
}

strebel::MapOptions nodes(std::size_t n) {
  strebel::MapOptions o;
  o.nodes = n;
  return o;
}

void BM_CriticalSet(benchmark::State& state) {
  std::vector<cplx> poles;
  std::vector<double> weights;
  for (int k = 0; k < state.range(0); ++k) {
    poles.push_back(std::polar(1.0 + 0.1 * k, 2.4 * k));
    weights.push_back(1.0 + 0.05 * k);
  }
  const auto qd = strebel::make_differential(poles, weights);
  for (auto _ : state) benchmark::DoNotOptimize(strebel::critical_set(qd));
}
BENCHMARK(BM_CriticalSet)->Arg(3)->Arg(8)->Arg(16);

void BM_FindComponents(benchmark::State& state) {
  const auto qd = running();
  for (auto _ : state) benchmark::DoNotOptimize(strebel::find_components(qd, 9.0));
}
BENCHMARK(BM_FindComponents)->Unit(benchmark::kMillisecond);

void BM_CriticalGraph(benchmark::State& state) {
  const auto qd = running();
  for (auto _ : state) benchmark::DoNotOptimize(strebel::critical_graph(qd));
}
BENCHMARK(BM_CriticalGraph)->Unit(benchmark::kMillisecond);

void BM_InteriorMap(benchmark::State& state) {
  const auto qd = running();
  const auto curve = outer_curve(qd);
  const cplx p0 = strebel::interior_reference_point(qd, curve);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(strebel::interior_map(qd, curve, p0, nodes(n)));
}
BENCHMARK(BM_InteriorMap)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_NumericFingerprint(benchmark::State& state) {
  const auto qd = running();
  const auto curve = outer_curve(qd);
  const auto in = strebel::interior_map(qd, curve, strebel::interior_reference_point(qd, curve), nodes(512));
  const auto out = strebel::exterior_map(qd, curve, nodes(512));
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(strebel::numeric_fingerprint(in, out, m));
}
BENCHMARK(BM_NumericFingerprint)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_AnalyzeComponent(benchmark::State& state) {
  const auto qd = running();
  const auto curve = outer_curve(qd);
  strebel::AnalysisOptions opts;
  opts.map = nodes(512);
  for (auto _ : state) benchmark::DoNotOptimize(strebel::analyze_component(qd, curve, opts));
}
BENCHMARK(BM_AnalyzeComponent)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
