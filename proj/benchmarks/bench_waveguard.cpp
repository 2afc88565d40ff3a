#include <benchmark/benchmark.h>

#include "waveguard/certificates.hpp"
#include "waveguard/initial_data.hpp"
#include "waveguard/solver.hpp"
#include "waveguard/state_space.hpp"

using namespace waveguard;

namespace {

void BM_LeapfrogStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Grid grid(1.0, n);
  LeapfrogSolver solver(grid, FeedbackLaw::deadzone(0.2), ForcingLaw::tanh_antidamping(0.3), SolverConfig{});
  InitialParams p;
  p.width = 0.1;
  auto init = make_initial(InitialKind::gaussian_bump, p, grid).state;
  auto prev = solver.seed_previous(init);
  std::vector<double> curr = init.u, next(grid.n_nodes());
  for (auto _ : state) {
    solver.step(prev, curr, next, 0.0);
    benchmark::DoNotOptimize(next.data());
  }
  state.SetItemsProcessed(state.iterations() * (n + 1));
}
BENCHMARK(BM_LeapfrogStep)->Arg(200)->Arg(800)->Arg(3200);

void BM_SimulateAntidamping(benchmark::State& state) {
  Grid grid(1.0, static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.t_final = 20;
  cfg.sample_stride = 50;
  InitialParams p;
  p.width = 0.1;
  auto init = make_initial(InitialKind::gaussian_bump, p, grid).state;
  for (auto _ : state) {
    auto traj = simulate(init, FeedbackLaw::identity(), ForcingLaw::tanh_antidamping(0.4), grid, cfg);
    benchmark::DoNotOptimize(traj.energies.back().total);
  }
}
BENCHMARK(BM_SimulateAntidamping)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Energy(benchmark::State& state) {
  Grid grid(1.0, static_cast<int>(state.range(0)));
  InitialParams p;
  auto s = make_initial(InitialKind::right_moving_pulse, p, grid).state;
  for (auto _ : state) benchmark::DoNotOptimize(energy(s, grid).total);
}
BENCHMARK(BM_Energy)->Arg(400)->Arg(6400);

void BM_DistanceLemma(benchmark::State& state) {
  Grid grid(1.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(distance_lemma_constant(grid).K);
}
BENCHMARK(BM_DistanceLemma)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ExactSublevelDistance(benchmark::State& state) {
  Grid grid(1.0, 64);
  InitialParams p;
  auto s = make_initial(InitialKind::sine_mode, p, grid).state;
  for (auto _ : state) benchmark::DoNotOptimize(dist_to_sublevel_exact(s, SublevelSetSpec(0.5), grid));
}
BENCHMARK(BM_ExactSublevelDistance)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
