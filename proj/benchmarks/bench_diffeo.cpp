#include <benchmark/benchmark.h>

#include "hsc/descriptors.hpp"
#include "hsc/diffeo.hpp"

namespace {

hsc::Diffeo bump(const hsc::UniformGrid& g, double amp, double center) {
  return hsc::Diffeo(hsc::grid_function(hsc::FunctionDescriptor::compact(amp, center, 1.0), g));
}

void BM_Compose(benchmark::State& state) {
  const hsc::UniformGrid g(-6, 6, 1e-3);
  const auto F = bump(g, 0.2, 0.3), G = bump(g, -0.25, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(hsc::compose(F, G));
}
BENCHMARK(BM_Compose)->Unit(benchmark::kMillisecond);

void BM_Invert(benchmark::State& state) {
  const hsc::UniformGrid g(-6, 6, 1e-3);
  const auto F = bump(g, 0.3, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(hsc::invert(F));
}
BENCHMARK(BM_Invert)->Unit(benchmark::kMillisecond);

}  // namespace
