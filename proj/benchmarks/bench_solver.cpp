#include "fracres/examples.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace fracres;

void BM_FixedPointMap(benchmark::State& state) {
  const ProblemSpec spec = build_section4(static_cast<int>(state.range(1)),
                                          static_cast<int>(state.range(0)));
  const ResonanceData rd = build_resonance(spec);
  const DomainElement x{Vec::Zero(spec.dim()), GridFn(spec.grid, spec.dim())};
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point_map(spec, rd, x));
}
BENCHMARK(BM_FixedPointMap)->Args({256, 1})->Args({1024, 1})->Args({256, 3});

void BM_SolveSection4(benchmark::State& state) {
  const ProblemSpec spec = build_section4(1, static_cast<int>(state.range(0)));
  const ResonanceData rd = build_resonance(spec);
  for (auto _ : state) benchmark::DoNotOptimize(solve(spec, rd, SolveOptions{}));
}
BENCHMARK(BM_SolveSection4)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
