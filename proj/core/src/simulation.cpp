#include "crossdiff/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "crossdiff/csv_io.hpp"
#include "crossdiff/error.hpp"
#include "crossdiff/oracle.hpp"

namespace crossdiff {

namespace {

// Piecewise-linear interpolation of tabulated values (x ascending).
double interpolate_table(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const auto j = static_cast<std::size_t>(it - x.begin());
  const double theta = (at - x[j - 1]) / (x[j] - x[j - 1]);
  return (1.0 - theta) * y[j - 1] + theta * y[j];
}

SnapshotTable load_initial_table(const SimulationConfig& cfg) {
  SnapshotTable table = read_snapshot_csv(cfg.initial.path);
  if (table.x.size() < 2 || !std::is_sorted(table.x.begin(), table.x.end())) {
    throw Error(ErrorKind::validation_error,
                "initial.path must hold at least two rows with ascending x");
  }
  return table;
}

}  // namespace

Mesh1D make_mesh(const SimulationConfig& cfg) {
  return Mesh1D(cfg.mesh.x_left, cfg.mesh.x_right, cfg.mesh.n);
}

ModelParams make_model_params(const SimulationConfig& cfg, const Mesh1D& mesh) {
  ModelParams p;
  for (std::size_t i = 0; i < 2; ++i) {
    p.a[i] = cfg.species[i].a;
    p.b[i] = cfg.species[i].b;
    p.c[i] = cfg.species[i].c;
  }
  if (cfg.model.q != 0.0) p.q_field = FeField::constant(mesh, cfg.model.q);
  p.lv = {cfg.species[0].alpha, cfg.species[1].alpha, cfg.species[0].beta1,
          cfg.species[0].beta2, cfg.species[1].beta1, cfg.species[1].beta2};
  p.delta = cfg.model.delta;
  p.epsilon = cfg.model.epsilon;
  p.validate();
  return p;
}

SnapshotOptions make_snapshot_options(const SimulationConfig& cfg) {
  return {ContactOptions{cfg.output.contact_zero_tolerance},
          JumpStencil{cfg.output.jump_stencil, cfg.output.jump_skip}};
}

State make_initial_state(const SimulationConfig& cfg) {
  const Mesh1D mesh = make_mesh(cfg);
  switch (cfg.initial.kind) {
    case InitialKind::gaussian_bumps:
      return {0.0, gaussian_bump_initial(cfg.initial.center1, cfg.initial.width, mesh),
              gaussian_bump_initial(cfg.initial.center2, cfg.initial.width, mesh)};
    case InitialKind::barenblatt_split: {
      const InterfaceTrajectory traj{cfg.initial.x0, cfg.initial.t_star};
      const BarenblattProfile profile{cfg.initial.t_star};
      return {0.0,
              FeField::interpolate(mesh, [&](double x) {
                return explicit_segregated(x, 0.0, traj, profile).first;
              }),
              FeField::interpolate(mesh, [&](double x) {
                return explicit_segregated(x, 0.0, traj, profile).second;
              })};
    }
    case InitialKind::file: {
      const SnapshotTable table = load_initial_table(cfg);
      return {0.0,
              FeField::interpolate(mesh, [&](double x) { return interpolate_table(table.x, table.u1, x); }),
              FeField::interpolate(mesh, [&](double x) { return interpolate_table(table.x, table.u2, x); })};
    }
  }
  throw Error(ErrorKind::invalid_argument, "unhandled initial data kind");
}

FrontState make_initial_front(const SimulationConfig& cfg) {
  const Mesh1D mesh = make_mesh(cfg);
  if (cfg.initial.kind == InitialKind::barenblatt_split) {
    return make_barenblatt_split_front({cfg.initial.x0, cfg.initial.t_star}, mesh.x_left(),
                                       mesh.x_right(), mesh.h());
  }
  if (cfg.initial.kind != InitialKind::file) {
    throw Error(ErrorKind::validation_error,
                "model.solver = fronttrack needs segregated initial data (barenblatt-split or file)");
  }
  const State s = make_initial_state(cfg);
  const auto eta = contact_point(s.u1, s.u2, make_snapshot_options(cfg).contact);
  if (!eta) {
    throw Error(ErrorKind::validation_error, "initial.path profile has no single contact point");
  }
  // The species dominating right of the contact point lives on the plus side.
  const double probe = std::min(*eta + mesh.h(), mesh.x_right());
  const bool first_on_right = s.u1.evaluate(probe) >= s.u2.evaluate(probe);
  const FeField& right = first_on_right ? s.u1 : s.u2;
  const FeField& left = first_on_right ? s.u2 : s.u1;
  auto count = [&](double len) {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(len / mesh.h())));
  };
  return make_front_state(
      mesh.x_left(), *eta, mesh.x_right(), count(*eta - mesh.x_left()), count(mesh.x_right() - *eta),
      [&](double x) { return std::max(0.0, left.evaluate(x)); },
      [&](double x) { return std::max(0.0, right.evaluate(x)); },
      first_on_right ? Species::first : Species::second);
}

RunResult run_eulerian(const SimulationConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const State initial = make_initial_state(cfg);
  const ModelParams params = make_model_params(cfg, initial.u1.mesh());
  RunOptions o = opts;
  o.snapshot = make_snapshot_options(cfg);
  return run(initial, params, cfg.time.stepping(), cfg.output.snapshot_times, o);
}

FrontRunResult run_fronttrack(const SimulationConfig& cfg) {
  cfg.validate();
  const Mesh1D mesh = make_mesh(cfg);
  const FrontState initial = make_initial_front(cfg);
  const ModelParams params = make_model_params(cfg, mesh);
  return run_front(initial, params, cfg.time.tau, cfg.time.t_final, mesh,
                   cfg.output.snapshot_times, FrontOptions{cfg.model.pressure_sign},
                   make_snapshot_options(cfg));
}

std::vector<DeltaSweepRow> sweep_delta(const SimulationConfig& cfg, std::span<const double> deltas) {
  std::vector<std::future<DeltaSweepRow>> jobs;
  jobs.reserve(deltas.size());
  for (double delta : deltas) {
    SimulationConfig c = cfg;
    c.model.delta = delta;
    c.output.snapshot_times.clear();
    c.validate();
    jobs.push_back(std::async(std::launch::async, [c] {
      const RunResult r = run_eulerian(c);
      const State& s = r.final_state;
      const Snapshot snap = make_snapshot(s.t, s.u1, s.u2, make_snapshot_options(c));
      return DeltaSweepRow{c.model.delta, snap.t, snap.contact_point, snap.gradient_jump,
                           r.max_iterations};
    }));
  }
  std::vector<DeltaSweepRow> rows;
  rows.reserve(jobs.size());
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

BarenblattCheck validate_barenblatt(std::size_t n, double tau, double t_final, double tol) {
  const Mesh1D mesh(-6.0, 6.0, n);
  const BarenblattProfile profile{1.0};
  const State initial{0.0, FeField::interpolate(mesh, [&](double x) { return barenblatt(x, 0.0, profile); }),
                      FeField::constant(mesh, 0.0)};
  ModelParams params;
  params.a = {1.0, 1.0};
  params.delta = 0.0;
  params.epsilon = 1e-3;
  const TimeStepping ts{tau, t_final, tol, 100};
  const RunResult r = run(initial, params, ts, {});
  const double t_end = r.final_state.t;
  const FeField& u = r.final_state.u1;
  return {barenblatt_sup_error(u, t_end, profile),
          max_nodal_error(u, [&](double x) { return barenblatt(x, t_end, profile); }), r.steps,
          r.max_iterations};
}

}  // namespace crossdiff
