#include "crossdiff/fronttrack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "crossdiff/error.hpp"

namespace crossdiff {

namespace {

constexpr double kMinSpacingRatio = 1e-3;

SideState sample_side(double from, double to, std::size_t n_elements,
                      const DensityProfile& density) {
  SideState s;
  s.ref_spacing = (to - from) / static_cast<double>(n_elements);
  s.nodes.resize(n_elements + 1);
  s.ref_density.resize(n_elements + 1);
  for (std::size_t i = 0; i <= n_elements; ++i) {
    s.nodes[i] = i == n_elements ? to : from + static_cast<double>(i) * s.ref_spacing;
    s.ref_density[i] = density(s.nodes[i]);
  }
  return s;
}

// Local Jacobian dX/dy at node i: centered inside, second-order one-sided
// at the two ends.
double local_jacobian(const SideState& s, std::size_t i) {
  std::span<const double> x = s.nodes;
  const std::size_t last = x.size() - 1;
  const double two_h = 2.0 * s.ref_spacing;
  if (i == 0) return (-3.0 * x[0] + 4.0 * x[1] - x[2]) / two_h;
  if (i == last) return (3.0 * x[last] - 4.0 * x[last - 1] + x[last - 2]) / two_h;
  return (x[i + 1] - x[i - 1]) / two_h;
}

// Label length owned by node i; half an element at the two ends.
double reference_spacing(const SideState& s, std::size_t i) {
  return (i == 0 || i + 1 == s.nodes.size()) ? 0.5 * s.ref_spacing : s.ref_spacing;
}

// Derivative at x[i] of the parabola through nodes i, j, k.
double parabola_slope(std::span<const double> x, std::span<const double> y, std::size_t i,
                      std::size_t j, std::size_t k) {
  return y[i] * (2.0 * x[i] - x[j] - x[k]) / ((x[i] - x[j]) * (x[i] - x[k])) +
         y[j] * (x[i] - x[k]) / ((x[j] - x[i]) * (x[j] - x[k])) +
         y[k] * (x[i] - x[j]) / ((x[k] - x[i]) * (x[k] - x[j]));
}

// Slope of values at node i: centered inside, three-point one-sided at the
// ends.
double node_slope(std::span<const double> x, std::span<const double> y, std::size_t i) {
  const std::size_t last = x.size() - 1;
  if (i == 0) return parabola_slope(x, y, 0, 1, 2);
  if (i == last) return parabola_slope(x, y, last, last - 1, last - 2);
  return (y[i + 1] - y[i - 1]) / (x[i + 1] - x[i - 1]);
}

// Index of the node shared with the other side.
std::size_t interface_index(const FrontState& state, Side side) {
  return side == Side::minus ? state.minus.nodes.size() - 1 : 0;
}

void check_ascending(const SideState& s, const char* name) {
  for (std::size_t i = 0; i + 1 < s.nodes.size(); ++i) {
    if (!(s.nodes[i + 1] > s.nodes[i])) {
      std::ostringstream os;
      os << name << " side lost node ordering between nodes " << i << " and " << i + 1 << " ("
         << s.nodes[i] << " >= " << s.nodes[i + 1] << ")";
      throw Error(ErrorKind::tangled_mesh, os.str());
    }
  }
}

}  // namespace

void FrontState::validate() const {
  for (Side s : {Side::minus, Side::plus}) {
    const SideState& st = side(s);
    if (st.nodes.size() < 3 || st.ref_density.size() != st.nodes.size() || !(st.ref_spacing > 0.0)) {
      throw Error(ErrorKind::invalid_argument, "front side needs >= 3 nodes and matching densities");
    }
    check_ascending(st, s == Side::minus ? "minus" : "plus");
  }
  if (minus.nodes.back() != eta || plus.nodes.front() != eta) {
    throw Error(ErrorKind::invalid_argument, "interface nodes of both sides must sit at eta");
  }
}

FrontState make_front_state(double x_left, double eta0, double x_right, std::size_t n_minus,
                            std::size_t n_plus, const DensityProfile& minus_density,
                            const DensityProfile& plus_density, Species plus_species) {
  if (!(x_left < eta0 && eta0 < x_right)) {
    std::ostringstream os;
    os << "interface " << eta0 << " must lie strictly inside (" << x_left << ", " << x_right << ")";
    throw Error(ErrorKind::invalid_range, os.str());
  }
  if (n_minus < 2 || n_plus < 2) {
    throw Error(ErrorKind::invalid_range, "each front side needs at least 2 elements");
  }
  FrontState state;
  state.eta = eta0;
  state.minus = sample_side(x_left, eta0, n_minus, minus_density);
  state.plus = sample_side(eta0, x_right, n_plus, plus_density);
  state.plus_species = plus_species;
  state.validate();
  return state;
}

FrontState make_barenblatt_split_front(const InterfaceTrajectory& traj, double x_left,
                                       double x_right, double spacing) {
  traj.validate();
  if (!(spacing > 0.0)) throw Error(ErrorKind::invalid_argument, "spacing must be positive");
  const BarenblattProfile profile{traj.t_star};
  auto count = [&](double len) {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(len / spacing)));
  };
  auto b0 = [&](double x) { return barenblatt(x, 0.0, profile); };
  return make_front_state(x_left, traj.x0, x_right, count(traj.x0 - x_left),
                          count(x_right - traj.x0), b0, b0, Species::first);
}

std::vector<double> current_density(const FrontState& state, Side side) {
  const SideState& s = state.side(side);
  const std::size_t n = s.nodes.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (s.nodes[i + 1] - s.nodes[i] <= kMinSpacingRatio * s.ref_spacing) {
      std::ostringstream os;
      os << "element " << i << " shrank to " << s.nodes[i + 1] - s.nodes[i]
         << " (reference spacing " << s.ref_spacing << ")";
      throw Error(ErrorKind::degenerate_jacobian, os.str());
    }
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double jac = local_jacobian(s, i);
    if (!(jac > 0.0)) {
      std::ostringstream os;
      os << "non-positive Jacobian " << jac << " at node " << i;
      throw Error(ErrorKind::degenerate_jacobian, os.str());
    }
    w[i] = s.ref_density[i] / jac;
  }
  return w;
}

double side_mass(const FrontState& state, Side side) {
  const SideState& s = state.side(side);
  double m = 0.0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) m += s.ref_density[i] * reference_spacing(s, i);
  return m;
}

double side_mass_current(const FrontState& state, Side side) {
  const SideState& s = state.side(side);
  const std::vector<double> w = current_density(state, side);
  double m = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    m += w[i] * local_jacobian(s, i) * reference_spacing(s, i);
  }
  return m;
}

std::vector<double> side_reaction(const FrontState& state, Side side, const LotkaVolterra& lv) {
  const std::vector<double> w = current_density(state, side);
  const Species sp = state.species(side);
  std::vector<double> f(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    f[i] = sp == Species::first ? lv_reaction(sp, w[i], 0.0, lv) : lv_reaction(sp, 0.0, w[i], lv);
  }
  return f;
}

PressureSolution solve_pressure(const FrontState& state, Side side,
                                std::span<const double> reaction, const FrontOptions& opts) {
  const SideState& s = state.side(side);
  const std::size_t n = s.nodes.size();
  if (reaction.size() != n) {
    throw Error(ErrorKind::length_mismatch, "reaction must have one value per side node");
  }
  PressureSolution out{side, std::vector<double>(n, 0.0)};
  if (std::all_of(reaction.begin(), reaction.end(), [](double f) { return f == 0.0; })) return out;

  const std::vector<double> w = current_density(state, side);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w[i] > 0.0)) {
      std::ostringstream os;
      os << "density " << w[i] << " at node " << i << " (pressure needs w > 0)";
      throw Error(ErrorKind::degenerate_density, os.str());
    }
  }

  // w p_x = sign * (C - F) with F the running integral of f; C makes the
  // integral of p_x over the side vanish so that p is zero at both ends.
  std::vector<double> f_elem(n - 1), inv_w(n - 1), dx(n - 1);
  double running = 0.0;
  double num = 0.0, den = 0.0;
  for (std::size_t e = 0; e + 1 < n; ++e) {
    dx[e] = s.nodes[e + 1] - s.nodes[e];
    const double next = running + 0.5 * dx[e] * (reaction[e] + reaction[e + 1]);
    f_elem[e] = 0.5 * (running + next);
    inv_w[e] = 2.0 / (w[e] + w[e + 1]);
    num += dx[e] * f_elem[e] * inv_w[e];
    den += dx[e] * inv_w[e];
    running = next;
  }
  const double c = num / den;
  for (std::size_t e = 0; e + 2 < n; ++e) {
    out.p[e + 1] = out.p[e] + dx[e] * opts.pressure_sign * (c - f_elem[e]) * inv_w[e];
  }
  return out;
}

std::vector<double> node_velocities(const FrontState& state, Side side,
                                    const PressureSolution& pressure, double a_side) {
  const SideState& s = state.side(side);
  const std::size_t n = s.nodes.size();
  if (pressure.p.size() != n) {
    throw Error(ErrorKind::length_mismatch, "pressure does not match the side's nodes");
  }
  const std::vector<double> w = current_density(state, side);
  std::span<const double> x = s.nodes;

  enum class Kind { populated, edge, empty };
  std::vector<Kind> kind(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = i > 0 && w[i - 1] > 0.0;
    const bool right = i + 1 < n && w[i + 1] > 0.0;
    kind[i] = w[i] > 0.0 ? Kind::populated : (left || right ? Kind::edge : Kind::empty);
  }

  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double w_slope = 0.0;
    if (kind[i] == Kind::populated) {
      w_slope = node_slope(x, w, i);
    } else if (kind[i] == Kind::edge) {
      const bool left = i > 0 && w[i - 1] > 0.0;
      const bool right = i + 1 < n && w[i + 1] > 0.0;
      if (left && right) {
        w_slope = node_slope(x, w, i);
      } else if (left) {
        w_slope = (w[i] - w[i - 1]) / (x[i] - x[i - 1]);
      } else {
        w_slope = (w[i + 1] - w[i]) / (x[i + 1] - x[i]);
      }
    } else {
      continue;
    }
    v[i] = -a_side * w_slope + node_slope(x, pressure.p, i);
  }

  // Empty runs: interpolate between the bracketing populated/edge nodes. The
  // outer boundary node is pinned, so it anchors with zero velocity.
  const std::size_t outer = side == Side::minus ? 0 : n - 1;
  std::size_t i = 0;
  while (i < n) {
    if (kind[i] != Kind::empty) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && kind[j + 1] == Kind::empty) ++j;
    // Run [i, j]. Anchors at i-1 / j+1, or at the pinned outer node itself.
    std::ptrdiff_t lo = static_cast<std::ptrdiff_t>(i) - 1;
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(j) + 1;
    double v_lo = lo >= 0 ? v[static_cast<std::size_t>(lo)] : 0.0;
    double v_hi = hi < static_cast<std::ptrdiff_t>(n) ? v[static_cast<std::size_t>(hi)] : 0.0;
    if (lo < 0) {
      lo = static_cast<std::ptrdiff_t>(i);
      v_lo = outer == i ? 0.0 : v_hi;
    }
    if (hi >= static_cast<std::ptrdiff_t>(n)) {
      hi = static_cast<std::ptrdiff_t>(j);
      v_hi = outer == j ? 0.0 : v_lo;
    }
    const double x_lo = x[static_cast<std::size_t>(lo)];
    const double x_hi = x[static_cast<std::size_t>(hi)];
    for (std::size_t k = i; k <= j; ++k) {
      const double theta = x_hi > x_lo ? (x[k] - x_lo) / (x_hi - x_lo) : 0.0;
      v[k] = (1.0 - theta) * v_lo + theta * v_hi;
    }
    i = j + 1;
  }
  return v;
}

double one_sided_interface_velocity(const FrontState& state, Side side,
                                    const PressureSolution& pressure, double a_side) {
  const SideState& s = state.side(side);
  const std::vector<double> w = current_density(state, side);
  const std::size_t i = interface_index(state, side);
  std::span<const double> x = s.nodes;
  return -a_side * node_slope(x, w, i) + node_slope(x, pressure.p, i);
}

double interface_velocity(const FrontState& state, const PressureSolution& /*minus*/,
                          const PressureSolution& plus, double a_plus) {
  return one_sided_interface_velocity(state, Side::plus, plus, a_plus);
}

FrontState front_step(const FrontState& state, const ModelParams& params, double dt,
                      const FrontOptions& opts) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");

  FrontState next = state;
  const std::array<Side, 2> sides{Side::minus, Side::plus};
  std::array<PressureSolution, 2> pressure;
  std::array<std::vector<double>, 2> reaction;
  for (std::size_t k = 0; k < 2; ++k) {
    reaction[k] = side_reaction(state, sides[k], params.lv);
    pressure[k] = solve_pressure(state, sides[k], reaction[k], opts);
  }
  const double a_plus = params.a[index_of(state.species(Side::plus))];
  const double v_interface = interface_velocity(state, pressure[0], pressure[1], a_plus);
  if (!std::isfinite(v_interface)) {
    throw Error(ErrorKind::nan_detected, "interface velocity is not finite");
  }

  for (std::size_t k = 0; k < 2; ++k) {
    const Side side = sides[k];
    const SideState& old_side = state.side(side);
    SideState& new_side = next.side(side);
    const double a_side = params.a[index_of(state.species(side))];
    const std::vector<double> v = node_velocities(state, side, pressure[k], a_side);
    const std::size_t n = old_side.nodes.size();
    const std::size_t outer = side == Side::minus ? 0 : n - 1;
    const std::size_t inner = interface_index(state, side);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == outer) continue;
      if (!std::isfinite(v[i])) {
        std::ostringstream os;
        os << "non-finite node velocity at node " << i;
        throw Error(ErrorKind::nan_detected, os.str());
      }
      new_side.nodes[i] = old_side.nodes[i] + dt * (i == inner ? v_interface : v[i]);
    }
    if (std::any_of(reaction[k].begin(), reaction[k].end(), [](double f) { return f != 0.0; })) {
      for (std::size_t i = 0; i < n; ++i) {
        new_side.ref_density[i] += dt * reaction[k][i] * local_jacobian(old_side, i);
      }
    }
  }
  next.eta = state.eta + dt * v_interface;
  next.minus.nodes.back() = next.eta;
  next.plus.nodes.front() = next.eta;
  next.t = state.t + dt;
  check_ascending(next.minus, "minus");
  check_ascending(next.plus, "plus");
  if (!(next.minus.nodes.front() < next.eta && next.eta < next.plus.nodes.back())) {
    throw Error(ErrorKind::tangled_mesh, "interface left the domain");
  }
  return next;
}

std::pair<FeField, FeField> resample_front(const FrontState& state, const Mesh1D& mesh) {
  const std::vector<double> w_minus = current_density(state, Side::minus);
  const std::vector<double> w_plus = current_density(state, Side::plus);

  auto sample = [](const SideState& s, const std::vector<double>& w, double x) {
    if (x < s.nodes.front() || x > s.nodes.back()) return 0.0;
    auto it = std::upper_bound(s.nodes.begin(), s.nodes.end(), x);
    if (it == s.nodes.end()) return w.back();
    const auto j = static_cast<std::size_t>(it - s.nodes.begin());
    const double theta = (x - s.nodes[j - 1]) / (s.nodes[j] - s.nodes[j - 1]);
    return (1.0 - theta) * w[j - 1] + theta * w[j];
  };

  std::vector<double> u_plus(mesh.n_nodes()), u_minus(mesh.n_nodes());
  for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
    const double x = mesh.node(i);
    const double h = heaviside(x - state.eta);
    u_plus[i] = h * sample(state.plus, w_plus, x);
    u_minus[i] = (1.0 - h) * sample(state.minus, w_minus, x);
  }
  FeField plus_field(mesh, std::move(u_plus));
  FeField minus_field(mesh, std::move(u_minus));
  if (state.plus_species == Species::first) return {plus_field, minus_field};
  return {minus_field, plus_field};
}

double stable_front_dt(const FrontState& state, const ModelParams& params,
                       const FrontOptions& opts) {
  double dt = std::numeric_limits<double>::infinity();
  for (Side side : {Side::minus, Side::plus}) {
    const SideState& s = state.side(side);
    const std::vector<double> w = current_density(state, side);
    const double a = params.a[index_of(state.species(side))];
    for (std::size_t e = 0; e + 1 < w.size(); ++e) {
      const double diffusivity = a * std::max(w[e], w[e + 1]);
      if (diffusivity <= 0.0) continue;
      const double dx = s.nodes[e + 1] - s.nodes[e];
      dt = std::min(dt, opts.cfl * dx * dx / (2.0 * diffusivity));
    }
  }
  return dt;
}

FrontRunResult run_front(const FrontState& initial, const ModelParams& params, double dt,
                         double t_final, const Mesh1D& mesh,
                         const std::vector<double>& snapshot_times, const FrontOptions& opts,
                         const SnapshotOptions& snap_opts) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  initial.validate();
  std::vector<double> pending;
  for (double t : snapshot_times) {
    if (!(t >= 0.0) || t > t_final * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "snapshot time " << t << " is outside [0, " << t_final << "]";
      throw Error(ErrorKind::invalid_argument, os.str());
    }
    if (t > 0.0) pending.push_back(t);
  }
  std::sort(pending.begin(), pending.end());

  auto snapshot = [&](const FrontState& s) {
    auto [u1, u2] = resample_front(s, mesh);
    return make_snapshot(s.t, std::move(u1), std::move(u2), snap_opts);
  };

  FrontRunResult out{{{initial.t, initial.eta}}, {snapshot(initial)}, initial};
  FrontState& state = out.final_state;
  const std::size_t n_steps =
      t_final > 0.0 ? static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9)) : 0;
  auto next = pending.begin();
  for (std::size_t step = 1; step <= n_steps; ++step) {
    const double t_target = step == n_steps ? initial.t + t_final
                                            : initial.t + static_cast<double>(step) * dt;
    try {
      const double span = t_target - state.t;
      std::size_t substeps = 1;
      if (opts.cfl > 0.0) {
        const double limit = stable_front_dt(state, params, opts);
        if (span > limit) substeps = static_cast<std::size_t>(std::ceil(span / limit));
      }
      const double t_start = state.t;
      for (std::size_t k = 1; k <= substeps; ++k) {
        const double t_sub = k == substeps ? t_target
                                           : t_start + span * static_cast<double>(k) /
                                                           static_cast<double>(substeps);
        state = front_step(state, params, t_sub - state.t, opts);
      }
    } catch (const Error& e) {
      std::ostringstream os;
      os << "front step " << step << " (t = " << t_target << "): " << e.what();
      throw Error(e.kind(), os.str());
    }
    state.t = t_target;
    out.trajectory.push_back({state.t, state.eta});
    bool emitted = false;
    while (next != pending.end() && state.t - initial.t >= *next - 1e-9 * dt) {
      if (!emitted) out.snapshots.push_back(snapshot(state));
      emitted = true;
      ++next;
    }
  }
  return out;
}

}  // namespace crossdiff
