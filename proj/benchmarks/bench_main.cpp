#include <benchmark/benchmark.h>

#include <random>

#include "crossdiff/fronttrack.hpp"
#include "crossdiff/linsolve.hpp"
#include "crossdiff/scheme.hpp"
#include "crossdiff/simulation.hpp"

using namespace crossdiff;

namespace {

void BM_BlockThomas(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BlockTridiagonal a(n);
  for (auto& m : a.sub) m = {u(rng), u(rng), u(rng), u(rng)};
  for (auto& m : a.super) m = {u(rng), u(rng), u(rng), u(rng)};
  for (auto& m : a.diag) m = {5.0 + u(rng), u(rng), u(rng), 5.0 + u(rng)};
  std::vector<Vec2> rhs(n, Vec2{1.0, -1.0}), x(n);
  ThomasWorkspace ws;
  for (auto _ : state) {
    solve_block_thomas(a, rhs, x, ws);
    benchmark::DoNotOptimize(x.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_BlockThomas)->Arg(1001)->Arg(10001);

void BM_AssembleStep(benchmark::State& state) {
  const SimulationConfig cfg = preset_config("exp2");
  const State s = make_initial_state(cfg);
  const ModelParams p = make_model_params(cfg, s.u1.mesh());
  StepSystem sys;
  FluxCoefficients flux;
  for (auto _ : state) {
    assemble_step_system(s, s.u1, s.u2, p, cfg.time.tau, sys, flux);
    benchmark::DoNotOptimize(sys.rhs.data());
  }
}
BENCHMARK(BM_AssembleStep);

void BM_EulerianStep(benchmark::State& state) {
  const SimulationConfig cfg = preset_config("exp2");
  const State s = make_initial_state(cfg);
  const ModelParams p = make_model_params(cfg, s.u1.mesh());
  const TimeStepping ts = cfg.time.stepping();
  StepWorkspace ws;
  for (auto _ : state) {
    FixedPointResult r = inner_fixed_point(s, p, ts, ws);
    benchmark::DoNotOptimize(r.iterations);
  }
}
BENCHMARK(BM_EulerianStep);

void BM_FrontStep(benchmark::State& state) {
  ModelParams p;
  p.a = {1.0, 1.0};
  const FrontState s = make_barenblatt_split_front({0.5, 1.0}, -6.0, 6.0, 0.006);
  for (auto _ : state) {
    FrontState next = front_step(s, p, 1e-6);
    benchmark::DoNotOptimize(next.eta);
  }
}
BENCHMARK(BM_FrontStep);

}  // namespace
BENCHMARK_MAIN();
