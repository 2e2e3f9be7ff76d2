#include "crossdiff/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crossdiff/error.hpp"

namespace crossdiff {

void TimeStepping::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::validation_error, msg); };
  if (!(tau > 0.0) || !std::isfinite(tau)) fail("time.tau must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) fail("time.t_final must be nonnegative");
  if (!(tol >= 0.0)) fail("time.tol must be nonnegative");
  if (k_max < 1) fail("time.k_max must be at least 1");
}

std::size_t TimeStepping::n_steps() const {
  if (t_final <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(t_final / tau - 1e-9));
}

StepSystem assemble_step_system(const State& prev, const FeField& frozen1, const FeField& frozen2,
                                const ModelParams& params, double tau) {
  StepSystem sys;
  FluxCoefficients flux;
  assemble_step_system(prev, frozen1, frozen2, params, tau, sys, flux);
  return sys;
}

void assemble_step_system(const State& prev, const FeField& frozen1, const FeField& frozen2,
                          const ModelParams& params, double tau, StepSystem& sys,
                          FluxCoefficients& flux) {
  require_same_mesh(prev.u1, prev.u2);
  require_same_mesh(prev.u1, frozen1);
  require_same_mesh(prev.u1, frozen2);

  const Mesh1D& mesh = prev.u1.mesh();
  const std::size_t n = mesh.n_nodes();
  const double eps = params.epsilon;
  const LotkaVolterra& lv = params.lv;
  regularized_flux_coefficients(frozen1, frozen2, params, flux);

  auto& m = sys.matrix;
  m.diag.resize(n);
  m.sub.resize(n - 1);
  m.super.resize(n - 1);
  sys.rhs.resize(n);

  for (std::size_t j = 0; j < n; ++j) {
    const double w = mesh.lumped_weight(j);
    m.diag[j] = Mat2{w / tau - w * lv.alpha1, 0.0, 0.0, w / tau - w * lv.alpha2};

    const double p1 = cutoff(prev.u1[j], eps);
    const double p2 = cutoff(prev.u2[j], eps);
    const double loss1 = cutoff(frozen1[j], eps) * (lv.beta11 * p1 + lv.beta12 * p2);
    const double loss2 = cutoff(frozen2[j], eps) * (lv.beta21 * p1 + lv.beta22 * p2);
    sys.rhs[j] = {w * (prev.u1[j] / tau - loss1), w * (prev.u2[j] / tau - loss2)};
  }

  const double inv_h = 1.0 / mesh.h();
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const Mat2 k = inv_h * flux.diffusion[e];
    m.diag[e] = m.diag[e] + k;
    m.diag[e + 1] = m.diag[e + 1] + k;
    m.super[e] = -1.0 * k;
    m.sub[e] = -1.0 * k;

    const auto& drift = flux.drift[e];
    sys.rhs[e][0] += drift[0];
    sys.rhs[e][1] += drift[1];
    sys.rhs[e + 1][0] -= drift[0];
    sys.rhs[e + 1][1] -= drift[1];
  }
}

FixedPointResult inner_fixed_point(const State& prev, const ModelParams& params,
                                   const TimeStepping& ts) {
  StepWorkspace ws;
  return inner_fixed_point(prev, params, ts, ws);
}

FixedPointResult inner_fixed_point(const State& prev, const ModelParams& params,
                                   const TimeStepping& ts, StepWorkspace& ws) {
  const std::size_t n = prev.u1.size();

  FeField frozen1 = prev.u1;
  FeField frozen2 = prev.u2;
  ws.solution.resize(n);
  ws.v1.resize(n);
  ws.v2.resize(n);
  double increment = 0.0;
  for (std::size_t k = 1; k <= ts.k_max; ++k) {
    assemble_step_system(prev, frozen1, frozen2, params, ts.tau, ws.system, ws.flux);
    solve_block_thomas(ws.system.matrix, ws.system.rhs, ws.solution, ws.thomas);

    increment = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2& x = ws.solution[j];
      if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
        std::ostringstream os;
        os << "non-finite iterate at node " << j << ", inner iteration " << k;
        throw Error(ErrorKind::nan_detected, os.str());
      }
      ws.v1[j] = x[0];
      ws.v2[j] = x[1];
      increment = std::max({increment, std::abs(x[0] - frozen1[j]), std::abs(x[1] - frozen2[j])});
    }
    frozen1.assign(ws.v1);
    frozen2.assign(ws.v2);
    if (increment < ts.tol) {
      return {State{prev.t + ts.tau, std::move(frozen1), std::move(frozen2)}, k, increment};
    }
  }
  std::ostringstream os;
  os << "fixed point did not reach tol = " << ts.tol << " in " << ts.k_max
     << " iterations (last increment " << increment << ")";
  throw Error(ErrorKind::no_convergence, os.str());
}

RunResult run(const State& initial, const ModelParams& params, const TimeStepping& ts,
              const std::vector<double>& snapshot_times, const RunOptions& opts) {
  ts.validate();
  params.validate();
  require_same_mesh(initial.u1, initial.u2);

  std::vector<double> pending;
  for (double t : snapshot_times) {
    if (!(t >= 0.0) || t > ts.t_final * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "snapshot time " << t << " is outside [0, " << ts.t_final << "]";
      throw Error(ErrorKind::invalid_argument, os.str());
    }
    if (t > 0.0) pending.push_back(t);
  }
  std::sort(pending.begin(), pending.end());
  pending.erase(std::unique(pending.begin(), pending.end()), pending.end());

  std::vector<Snapshot> snapshots;
  snapshots.push_back(make_snapshot(initial.t, initial.u1, initial.u2, opts.snapshot));
  std::size_t max_iterations = 0;

  State state = initial;
  StepWorkspace ws;
  const std::size_t n_steps = ts.n_steps();
  auto next = pending.begin();
  for (std::size_t step = 1; step <= n_steps; ++step) {
    FixedPointResult fp = [&] {
      try {
        return inner_fixed_point(state, params, ts, ws);
      } catch (const Error& e) {
        std::ostringstream os;
        os << "time step " << step << " (t = " << state.t + ts.tau << "): " << e.what();
        throw Error(e.kind(), os.str());
      }
    }();
    state = std::move(fp.state);
    state.t = initial.t + static_cast<double>(step) * ts.tau;
    max_iterations = std::max(max_iterations, fp.iterations);
    if (opts.on_step) opts.on_step(StepInfo{step, fp.iterations, &state});

    const double elapsed = state.t - initial.t;
    bool emitted = false;
    while (next != pending.end() && elapsed >= *next - 1e-9 * ts.tau) {
      if (!emitted) {
        snapshots.push_back(make_snapshot(state.t, state.u1, state.u2, opts.snapshot));
        emitted = true;
      }
      ++next;
    }
  }
  return RunResult{std::move(snapshots), n_steps, max_iterations, std::move(state)};
}

}  // namespace crossdiff
