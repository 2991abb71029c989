#include <benchmark/benchmark.h>

#include "latdiff/bloch.hpp"
#include "latdiff/classical.hpp"
#include "latdiff/propagator.hpp"
#include "latdiff/raman_nath.hpp"
#include "latdiff/units.hpp"

using namespace latdiff;

namespace {

void BM_SplitStepPeriod(benchmark::State& state) {
  const double u0 = 592.6;
  PulseSchedule s;
  s.depth_u0 = u0;
  s.t_pulse = harmonic_period_internal(u0);
  s.dt = default_time_step(u0);
  s.g1d_internal = 0.84;
  s.sample_times = {s.t_pulse};
  const auto psi = init_uniform_state(SpatialGrid(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(evolve_pulse(psi, s));
}
BENCHMARK(BM_SplitStepPeriod)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BandSpectrum(benchmark::State& state) {
  const double u0 = static_cast<double>(state.range(0));
  const auto basis = PlaneWaveBasis::for_depth(u0);
  for (auto _ : state) benchmark::DoNotOptimize(project_uniform(band_spectrum_q0(u0, basis)));
}
BENCHMARK(BM_BandSpectrum)->Arg(30)->Arg(2000)->Arg(15800)->Unit(benchmark::kMillisecond);

void BM_ClassicalEnsemble(benchmark::State& state) {
  const double u0 = 592.6;
  const double T = harmonic_period_internal(u0);
  EnsembleSpec spec;
  spec.n_particles = static_cast<std::size_t>(state.range(0));
  spec.dt = T / 1000.0;
  for (int i = 0; i <= 250; ++i) spec.sample_times.push_back(0.01 * i * T);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_ensemble(spec, u0));
}
BENCHMARK(BM_ClassicalEnsemble)->Arg(4000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_RamanNath(benchmark::State& state) {
  const double beta = static_cast<double>(state.range(0));
  const int n = rn_min_orders(beta);
  for (auto _ : state) benchmark::DoNotOptimize(rn_populations(2.0 * beta, 1.0, n));
}
BENCHMARK(BM_RamanNath)->Arg(5)->Arg(50)->Arg(500);

}  // namespace
BENCHMARK_MAIN();
