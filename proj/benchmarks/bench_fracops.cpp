#include "fracres/fracops.hpp"
#include "fracres/linops.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

namespace {

using namespace fracres;

void BM_FracIntegral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridFn y = GridFn::sample(n, 3, [](double t) {
    return Vec::Constant(3, std::cos(t));
  });
  for (auto _ : state) benchmark::DoNotOptimize(frac_integral(y, 1.5));
  state.SetComplexityN(n);
}
BENCHMARK(BM_FracIntegral)->RangeMultiplier(2)->Range(128, 4096)->Complexity(benchmark::oNSquared);

void BM_FracDerivative(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridFn x = GridFn::sample(n, 3, [](double t) { return Vec::Constant(3, t * t); });
  const Order ord(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(frac_derivative(x, ord));
}
BENCHMARK(BM_FracDerivative)->Arg(256)->Arg(1024);

void BM_Pinv(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(n, n);
  for (int i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  m.col(0).setZero();
  const LinOp op(m);
  for (auto _ : state) benchmark::DoNotOptimize(pinv(op));
}
BENCHMARK(BM_Pinv)->Arg(3)->Arg(9)->Arg(30)->Arg(90);

}  // namespace
