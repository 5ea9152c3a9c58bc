#include "kerrcs/coherent_states.hpp"
#include "kerrcs/dynamics.hpp"
#include "kerrcs/entropy.hpp"

#include <benchmark/benchmark.h>

using namespace kerrcs;

namespace {

TwoModeAmplitudes state(int N, double kappa) {
  return build_ckncs({SectorDimension(N), 1.0, DeformationParameter(kappa)});
}

void BM_BuildCkncs(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(state(N, 0.1));
}
BENCHMARK(BM_BuildCkncs)->Arg(10)->Arg(40)->Arg(200);

void BM_Evolve(benchmark::State& st) {
  const auto init = state(static_cast<int>(st.range(0)), 0.1);
  const auto coupling = CouplingConfig::from_ratio(2.0);
  double tau = 0.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(evolve(init, coupling, tau));
    tau += 0.01;
  }
}
BENCHMARK(BM_Evolve)->Arg(10)->Arg(40)->Arg(200);

void BM_EntropyTrace(benchmark::State& st) {
  const auto init = state(40, 0.1);
  const auto coupling = CouplingConfig::from_ratio(2.0);
  const auto grid = make_tau_grid(50.0, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(entropy_trace(init, coupling, grid));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_EntropyTrace)->Arg(500)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
