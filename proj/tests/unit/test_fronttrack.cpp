#include <doctest.h>

#include <cmath>
#include <random>

#include "crossdiff/error.hpp"
#include "crossdiff/fronttrack.hpp"
#include "support.hpp"

using namespace crossdiff;
using test_support::error_kind;

namespace {

FrontState linear_front() {
  return make_front_state(
      0.0, 0.5, 1.0, 4, 4, [](double x) { return 1.0 + x; }, [](double x) { return 2.0 - x; },
      Species::first);
}

FrontState constant_front(double value, std::size_t n) {
  auto c = [value](double) { return value; };
  return make_front_state(0.0, 0.5, 1.0, n, n, c, c, Species::first);
}

ModelParams barenblatt_params() {
  ModelParams p;
  p.a = {1.0, 1.0};
  return p;
}

const InterfaceTrajectory kTraj{0.5, 1.0};
const BarenblattProfile kProfile{1.0};

}  // namespace

TEST_SUITE("fronttrack") {

TEST_CASE("construction and validation") {
  const FrontState s = linear_front();
  CHECK(s.minus.nodes.size() == 5);
  CHECK(s.minus.nodes.back() == 0.5);
  CHECK(s.plus.nodes.front() == 0.5);
  CHECK(s.minus.ref_spacing == 0.125);
  CHECK(s.species(Side::minus) == Species::second);
  CHECK(error_kind([] { make_front_state(0.0, 1.0, 1.0, 4, 4, {}, {}, Species::first); }) ==
        ErrorKind::invalid_range);
  FrontState bad = s;
  std::swap(bad.plus.nodes[1], bad.plus.nodes[2]);
  CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::tangled_mesh);
  bad = s;
  bad.eta = 0.6;
  CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::invalid_argument);
}

TEST_CASE("density without displacement equals the reference density") {
  const FrontState s = linear_front();
  for (Side side : {Side::minus, Side::plus}) {
    const std::vector<double> w = current_density(s, side);
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(w[i] == doctest::Approx(s.side(side).ref_density[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("uniform dilation halves the density") {
  FrontState s = linear_front();
  for (Side side : {Side::minus, Side::plus}) {
    for (double& x : s.side(side).nodes) x *= 2.0;
  }
  s.eta = 1.0;
  for (Side side : {Side::minus, Side::plus}) {
    const std::vector<double> w = current_density(s, side);
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(w[i] == doctest::Approx(0.5 * s.side(side).ref_density[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("current mass equals reference mass for any monotone displacement") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  for (int trial = 0; trial < 50; ++trial) {
    FrontState s = constant_front(1.0, 20);
    for (Side side : {Side::minus, Side::plus}) {
      SideState& st = s.side(side);
      for (std::size_t i = 0; i < st.ref_density.size(); ++i) st.ref_density[i] = 0.5 + jitter(rng) + 0.3;
      for (std::size_t i = 1; i + 1 < st.nodes.size(); ++i) {
        st.nodes[i] += jitter(rng) * st.ref_spacing;
      }
    }
    for (Side side : {Side::minus, Side::plus}) {
      CHECK(std::abs(side_mass_current(s, side) - side_mass(s, side)) <= 1e-12);
    }
  }
}

TEST_CASE("collapsed element is a degenerate Jacobian") {
  FrontState s = constant_front(1.0, 10);
  s.plus.nodes[3] = s.plus.nodes[2] + 1e-4 * s.plus.ref_spacing;
  CHECK(error_kind([&] { current_density(s, Side::plus); }) == ErrorKind::degenerate_jacobian);
}

TEST_CASE("pressure examples") {
  SUBCASE("no reaction") {
    const FrontState s = linear_front();
    const std::vector<double> f(5, 0.0);
    const PressureSolution p = solve_pressure(s, Side::plus, f);
    for (double v : p.p) CHECK(v == 0.0);
  }
  SUBCASE("unit density and unit source") {
    auto one = [](double) { return 1.0; };
    const FrontState s = make_front_state(-1.0, 0.0, 1.0, 10, 100, one, one, Species::first);
    const std::vector<double> f(101, 1.0);
    const PressureSolution p = solve_pressure(s, Side::plus, f);
    for (std::size_t i = 0; i <= 100; ++i) {
      const double x = s.plus.nodes[i];
      CHECK(p.p[i] == doctest::Approx(0.5 * x * (1.0 - x)).epsilon(1e-12).scale(1.0));
    }
    CHECK(p.p[50] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(p.p.front() == 0.0);
    CHECK(p.p.back() == 0.0);
  }
  SUBCASE("symmetric data give a symmetric pressure") {
    const FrontState s = make_front_state(
        -1.0, 0.0, 1.0, 10, 40, [](double) { return 1.0; },
        [](double x) { return 1.0 + x * (1.0 - x); }, Species::first);
    std::vector<double> f(41);
    for (std::size_t i = 0; i <= 40; ++i) f[i] = std::cos(M_PI * (s.plus.nodes[i] - 0.5));
    const PressureSolution p = solve_pressure(s, Side::plus, f);
    for (std::size_t i = 0; i <= 40; ++i) {
      CHECK(p.p[i] == doctest::Approx(p.p[40 - i]).epsilon(1e-10).scale(1.0));
    }
    CHECK(p.p[20] > 0.0);
  }
  SUBCASE("errors") {
    FrontState s = linear_front();
    s.plus.ref_density[4] = 0.0;
    const std::vector<double> f(5, 1.0);
    CHECK(error_kind([&] { solve_pressure(s, Side::plus, f); }) == ErrorKind::degenerate_density);
    const std::vector<double> short_f(3, 1.0);
    CHECK(error_kind([&] { solve_pressure(s, Side::plus, short_f); }) == ErrorKind::length_mismatch);
  }
}

TEST_CASE("velocity examples") {
  SUBCASE("constant density without pressure is at rest") {
    const FrontState s = constant_front(0.7, 8);
    const PressureSolution zero{Side::plus, std::vector<double>(9, 0.0)};
    for (double v : node_velocities(s, Side::plus, zero, 1.0)) CHECK(v == doctest::Approx(0.0));
    CHECK(interface_velocity(s, zero, zero, 1.0) == doctest::Approx(0.0));
  }
  SUBCASE("pressure offset does not matter") {
    const FrontState s = linear_front();
    PressureSolution p{Side::minus, {0.0, 0.1, 0.3, 0.2, 0.0}};
    const std::vector<double> v = node_velocities(s, Side::minus, p, 2.0);
    for (double& x : p.p) x += 5.0;
    const std::vector<double> v_shift = node_velocities(s, Side::minus, p, 2.0);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v_shift[i] == doctest::Approx(v[i]));
    CHECK(error_kind([&] {
            node_velocities(s, Side::minus, PressureSolution{Side::minus, {0.0}}, 1.0);
          }) == ErrorKind::length_mismatch);
  }
  SUBCASE("Barenblatt split moves with the closed-form speed") {
    for (double spacing : {0.02, 0.01}) {
      const FrontState s = make_barenblatt_split_front(kTraj, -5.0, 5.0, spacing);
      const PressureSolution pm{Side::minus, std::vector<double>(s.minus.nodes.size(), 0.0)};
      const PressureSolution pp{Side::plus, std::vector<double>(s.plus.nodes.size(), 0.0)};
      const double exact = -barenblatt_dx(kTraj.x0, 0.0, kProfile);
      CHECK(exact == doctest::Approx(0.5 / 3.0));
      const double plus = interface_velocity(s, pm, pp, 1.0);
      const double minus = one_sided_interface_velocity(s, Side::minus, pm, 1.0);
      CHECK(std::abs(plus - exact) <= spacing);
      CHECK(std::abs(minus - exact) <= spacing);
      CHECK(std::abs(plus - minus) <= spacing);
      // interior nodes inside the support move with -B_x
      const std::vector<double> v = node_velocities(s, Side::plus, pp, 1.0);
      const std::size_t mid = 50;
      CHECK(std::abs(v[mid] + barenblatt_dx(s.plus.nodes[mid], 0.0, kProfile)) <= spacing);
    }
  }
}

TEST_CASE("front step examples") {
  SUBCASE("state at rest stays put") {
    const FrontState s = constant_front(0.7, 8);
    const FrontState next = front_step(s, barenblatt_params(), 1e-3);
    CHECK(next.t == doctest::Approx(1e-3));
    CHECK(next.eta == doctest::Approx(0.5).epsilon(1e-14));
    for (std::size_t i = 0; i < s.plus.nodes.size(); ++i) {
      CHECK(next.plus.nodes[i] == doctest::Approx(s.plus.nodes[i]).epsilon(1e-14));
      CHECK(next.minus.nodes[i] == doctest::Approx(s.minus.nodes[i]).epsilon(1e-14));
    }
    CHECK(error_kind([&] { front_step(s, barenblatt_params(), 0.0); }) ==
          ErrorKind::invalid_argument);
  }
  SUBCASE("Barenblatt split after 1000 steps of 1e-4") {
    FrontState s = make_barenblatt_split_front(kTraj, -5.0, 5.0, 0.02);
    const double m_minus = side_mass(s, Side::minus);
    const double m_plus = side_mass(s, Side::plus);
    for (int k = 0; k < 1000; ++k) s = front_step(s, barenblatt_params(), 1e-4);
    CHECK(s.t == doctest::Approx(0.1));
    CHECK(std::abs(s.eta - eta_closed_form(0.1, kTraj)) <= 1e-2);
    CHECK(std::abs(side_mass(s, Side::minus) - m_minus) <= 1e-12);
    CHECK(std::abs(side_mass(s, Side::plus) - m_plus) <= 1e-12);
    CHECK(std::abs(side_mass_current(s, Side::minus) - m_minus) <= 1e-12);
    CHECK(std::abs(side_mass_current(s, Side::plus) - m_plus) <= 1e-12);
  }
  SUBCASE("huge step tangles the mesh") {
    const FrontState s = make_barenblatt_split_front(kTraj, -5.0, 5.0, 0.05);
    CHECK(error_kind([&] { front_step(s, barenblatt_params(), 10.0); }) == ErrorKind::tangled_mesh);
  }
}

TEST_CASE("steps below the stability bound never tangle, down to any halving") {
  const FrontState initial = make_barenblatt_split_front(kTraj, -5.0, 5.0, 0.02);
  const double bound = stable_front_dt(initial, barenblatt_params(), FrontOptions{1.0, 1.0});
  auto tangles = [&](double dt) {
    FrontState s = initial;
    const auto n = static_cast<int>(std::lround(0.05 / dt));
    try {
      for (int k = 0; k < n; ++k) s = front_step(s, barenblatt_params(), dt);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::tangled_mesh || e.kind() == ErrorKind::degenerate_jacobian) {
        return true;
      }
      throw;
    }
    return false;
  };
  for (double dt = bound; dt >= bound / 8.0; dt /= 2.0) CHECK_FALSE(tangles(dt));
  // well above the bound the explicit transport blows up
  CHECK(tangles(8.0 * bound));
}

TEST_CASE("stable step bound and automatic substeps") {
  const FrontState s = make_barenblatt_split_front(kTraj, -5.0, 5.0, 0.01);
  const double limit = stable_front_dt(s, barenblatt_params());
  // max density 2 at dx = 0.01
  CHECK(limit == doctest::Approx(0.4 * 1e-4 / 4.0).epsilon(1e-3));
  const Mesh1D mesh(-5.0, 5.0, 100);
  const FrontRunResult r = run_front(s, barenblatt_params(), 1e-3, 0.01, mesh, {0.005});
  CHECK(r.trajectory.size() == 11);
  CHECK(r.snapshots.size() == 2);
  CHECK(r.final_state.t == doctest::Approx(0.01));
  CHECK(std::abs(r.final_state.eta - eta_closed_form(0.01, kTraj)) <= 1e-4);
  CHECK(error_kind([&] { run_front(s, barenblatt_params(), 1e-3, 0.01, mesh, {0.5}); }) ==
        ErrorKind::invalid_argument);
}

TEST_CASE("species never mix") {
  const FrontState s = make_barenblatt_split_front(kTraj, -5.0, 5.0, 0.02);
  const Mesh1D mesh(-5.0, 5.0, 333);
  const auto [u1, u2] = resample_front(s, mesh);
  for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
    if (mesh.node(i) != s.eta) CHECK(u1[i] * u2[i] == 0.0);
    if (mesh.node(i) > s.eta) CHECK(u2[i] == 0.0);
  }
  CHECK(segregation_defect(u1, u2) == 0.0);
  CHECK(mass(u1) + mass(u2) == doctest::Approx(barenblatt_mass()).epsilon(1e-3));
}

TEST_CASE("reaction uses the side's own species") {
  const FrontState s = constant_front(0.5, 4);
  const LotkaVolterra lv{1.0, 5.0, 1.0, 0.5, 1.0, 2.0};
  for (double f : side_reaction(s, Side::plus, lv)) CHECK(f == doctest::Approx(0.5 * 0.5));
  for (double f : side_reaction(s, Side::minus, lv)) CHECK(f == doctest::Approx(0.5 * 4.0));
}

}  // TEST_SUITE
