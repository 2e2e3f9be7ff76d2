#pragma once

// Semi-implicit Euler / P1 solver for the regularized two-species system.
//
// Each time step solves, for i = 1, 2 and every test function chi,
//
//   (u_i^{n,k} - u_i^{n-1}, chi)^h / tau + (J_i^delta(frozen^{k-1}; u^{n,k}), chi')^h
//     = (alpha_i u_i^{n,k} - L(u_i^{n,k-1}) (beta_i1 L(u_1^{n-1}) + beta_i2 L(u_2^{n-1})), chi)^h
//
// by Picard iteration on the frozen coefficients, L being the clamp.

#include <cstddef>
#include <functional>
#include <vector>

#include "crossdiff/diagnostics.hpp"
#include "crossdiff/linsolve.hpp"
#include "crossdiff/mesh_fem.hpp"
#include "crossdiff/model.hpp"

namespace crossdiff {

struct TimeStepping {
  double tau = 1e-5;
  double t_final = 0.05;
  double tol = 1e-4;
  std::size_t k_max = 100;

  /// Throws validation-error unless tau > 0, t_final >= 0, tol >= 0, k_max >= 1.
  void validate() const;
  /// Number of fixed-size steps needed to reach t_final.
  std::size_t n_steps() const;
};

struct State {
  double t = 0.0;
  FeField u1;
  FeField u2;
};

struct StepSystem {
  BlockTridiagonal matrix;
  std::vector<Vec2> rhs;
};

/// Linear system for (u1^{n,k}, u2^{n,k}) at node-major block ordering.
/// Zero-flux boundaries need no row modification.
StepSystem assemble_step_system(const State& prev, const FeField& frozen1, const FeField& frozen2,
                                const ModelParams& params, double tau);
/// Same, overwriting `sys` and using `flux` as scratch.
void assemble_step_system(const State& prev, const FeField& frozen1, const FeField& frozen2,
                          const ModelParams& params, double tau, StepSystem& sys,
                          FluxCoefficients& flux);

/// Buffers reused across inner iterations and time steps.
struct StepWorkspace {
  StepSystem system;
  FluxCoefficients flux;
  ThomasWorkspace thomas;
  std::vector<Vec2> solution;
  std::vector<double> v1, v2;
};

struct FixedPointResult {
  State state;
  std::size_t iterations = 0;
  double increment = 0.0;  // max_i ||u_i^{n,k} - u_i^{n,k-1}||_inf at exit
};

/// Iterates from u^{n,0} = u^{n-1} until the increment drops below ts.tol.
/// Throws no-convergence after ts.k_max iterations and nan-detected on a
/// non-finite iterate.
FixedPointResult inner_fixed_point(const State& prev, const ModelParams& params,
                                   const TimeStepping& ts);
FixedPointResult inner_fixed_point(const State& prev, const ModelParams& params,
                                   const TimeStepping& ts, StepWorkspace& ws);

struct StepInfo {
  std::size_t step = 0;
  std::size_t iterations = 0;
  const State* state = nullptr;
};

struct RunOptions {
  SnapshotOptions snapshot;
  std::function<void(const StepInfo&)> on_step;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  std::size_t max_iterations = 0;
  State final_state;
};

/// Advances with fixed tau up to t_final. The first snapshot is always the
/// initial state; each requested time t > 0 yields one snapshot at the first
/// step with t_n >= t. Inner errors are rethrown with the step index.
RunResult run(const State& initial, const ModelParams& params, const TimeStepping& ts,
              const std::vector<double>& snapshot_times, const RunOptions& opts = {});

}  // namespace crossdiff
