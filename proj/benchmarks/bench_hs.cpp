#include <benchmark/benchmark.h>

#include "hsc/descriptors.hpp"
#include "hsc/hs.hpp"

namespace {

void BM_RoundTrip(benchmark::State& state) {
  const hsc::UniformGrid g(-20, 20, 1e-3 * static_cast<double>(state.range(0)) / 1000.0);
  const hsc::HSDiffeo phi(hsc::grid_function(hsc::FunctionDescriptor::compact(0.3, 0.5, 1.2), g));
  for (auto _ : state) benchmark::DoNotOptimize(hsc::r_inverse(hsc::r_transform(phi)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
// argument: step in units of 1e-6
BENCHMARK(BM_RoundTrip)->Arg(4000)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GeodesicBvp(benchmark::State& state) {
  const hsc::UniformGrid g(-8, 8, 1e-3);
  const hsc::HSDiffeo a(hsc::grid_function(hsc::FunctionDescriptor::compact(0.3, -1.0, 1.0), g));
  const hsc::HSDiffeo b(hsc::grid_function(hsc::FunctionDescriptor::compact(-0.2, 1.5, 1.3), g));
  for (auto _ : state) benchmark::DoNotOptimize(hsc::geodesic_bvp(a, b, 0.5));
}
BENCHMARK(BM_GeodesicBvp)->Unit(benchmark::kMillisecond);

// One hundred RK4 steps of the method-of-lines oracle.
void BM_PdeSteps(benchmark::State& state) {
  const hsc::UniformGrid g(-6, 6, 1e-3 * static_cast<double>(state.range(0)) / 1000.0);
  const auto u0 = hsc::grid_function(hsc::FunctionDescriptor::gaussian(0.5, 0.0, 1.0), g);
  const double dt = 1e-4;
  for (auto _ : state) benchmark::DoNotOptimize(hsc::pde_oracle(u0, 100 * dt, dt));
  state.SetItemsProcessed(state.iterations() * 100 * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_PdeSteps)->Arg(4000)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
