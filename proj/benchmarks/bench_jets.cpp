#include <benchmark/benchmark.h>

#include "hsc/jets.hpp"
#include "hsc/weights.hpp"

namespace {

std::vector<double> ramp(int degree) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (int k = 1; k <= degree; ++k) c[k] = 1.0 / (k * k);
  return c;
}

void BM_ComposeJets(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const hsc::Jet<double> f(ramp(degree)), g(ramp(degree));
  for (auto _ : state) benchmark::DoNotOptimize(hsc::compose_jets(f, g));
  state.SetComplexityN(degree);
}
BENCHMARK(BM_ComposeJets)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_InvertJet(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const hsc::Jet<double> f(ramp(degree));
  for (auto _ : state) benchmark::DoNotOptimize(hsc::invert_jet(f));
  state.SetComplexityN(degree);
}
BENCHMARK(BM_InvertJet)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_InvertJetRational(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  std::vector<hsc::Rational> c(static_cast<std::size_t>(degree) + 1, hsc::Rational(0));
  c[1] = 1;
  c[2] = 1;
  const hsc::Jet<hsc::Rational> f(c);
  for (auto _ : state) benchmark::DoNotOptimize(hsc::invert_jet(f));
}
BENCHMARK(BM_InvertJetRational)->Arg(12)->Arg(24);

void BM_Majorant(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto m = hsc::make_sequence(hsc::Generator::gevrey(2.0), N);
  for (auto _ : state) benchmark::DoNotOptimize(hsc::majorant_series(1.0, 1.0, 1.0, m, N));
}
BENCHMARK(BM_Majorant)->Arg(30)->Arg(60);

}  // namespace
