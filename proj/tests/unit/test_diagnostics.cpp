#include <doctest.h>

#include <cmath>
#include <random>

#include "crossdiff/diagnostics.hpp"
#include "crossdiff/error.hpp"
#include "support.hpp"

using namespace crossdiff;
using test_support::error_kind;

namespace {

const BarenblattProfile kProfile{1.0};
const InterfaceTrajectory kTraj{0.5, 1.0};

std::pair<FeField, FeField> explicit_pair(const Mesh1D& m, double t) {
  return {FeField::interpolate(m, [&](double x) { return explicit_segregated(x, t, kTraj, kProfile).first; }),
          FeField::interpolate(m, [&](double x) { return explicit_segregated(x, t, kTraj, kProfile).second; })};
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("mass") {
  const Mesh1D unit(0.0, 1.0, 10);
  CHECK(mass(FeField::constant(unit, 1.0)) == doctest::Approx(1.0));
  CHECK(mass(FeField::constant(unit, 0.0)) == 0.0);
  const Mesh1D m(-6.0, 6.0, 10000);
  const FeField b = FeField::interpolate(m, [](double x) { return barenblatt(x, 0.0, kProfile); });
  CHECK(std::abs(mass(b) - barenblatt_mass()) <= 1e-3);
}

TEST_CASE("mass is linear") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Mesh1D m(0.0, 2.0, 30);
  for (int trial = 0; trial < 20; ++trial) {
    const FeField f = FeField::interpolate(m, [&](double) { return u(rng); });
    const FeField g = FeField::interpolate(m, [&](double) { return u(rng); });
    const double a = u(rng), b = u(rng);
    std::vector<double> comb(m.n_nodes());
    for (std::size_t i = 0; i < comb.size(); ++i) comb[i] = a * f[i] + b * g[i];
    CHECK(mass(FeField(m, comb)) == doctest::Approx(a * mass(f) + b * mass(g)));
  }
}

TEST_CASE("segregation defect") {
  const Mesh1D m(0.0, 1.0, 10);
  CHECK(segregation_defect(FeField::constant(m, 1.0), FeField::constant(m, 1.0)) ==
        doctest::Approx(1.0));
  const FeField left = FeField::interpolate(m, [](double x) { return x < 0.45 ? 1.0 : 0.0; });
  const FeField right = FeField::interpolate(m, [](double x) { return x > 0.55 ? 1.0 : 0.0; });
  CHECK(segregation_defect(left, right) == 0.0);
  CHECK(error_kind([&] { segregation_defect(left, FeField::constant(Mesh1D(0.0, 1.0, 11), 1.0)); }) ==
        ErrorKind::mesh_mismatch);

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const FeField f = FeField::interpolate(m, [&](double) { return u(rng); });
    const FeField g = FeField::interpolate(m, [&](double) { return u(rng); });
    CHECK(segregation_defect(f, g) == segregation_defect(g, f));
    CHECK(segregation_defect(f, g) >= 0.0);
  }

  const Mesh1D fine(-6.0, 6.0, 1200);
  for (double t : {0.0, 0.3}) {
    const auto [u1, u2] = explicit_pair(fine, t);
    CHECK(segregation_defect(u1, u2) <= 4.0 * fine.h());
  }
}

TEST_CASE("contact point") {
  const Mesh1D m(0.0, 1.0, 1000);
  const FeField u1 = FeField::interpolate(m, [](double x) { return heaviside(x - 0.5); });
  const FeField u2 = FeField::interpolate(m, [](double x) { return heaviside(0.5 - x); });
  const auto cp = contact_point(u1, u2);
  REQUIRE(cp);
  CHECK(std::abs(*cp - 0.5) <= m.h());

  CHECK_FALSE(contact_point(FeField::constant(m, 1.0), FeField::constant(m, 0.0)));
  const FeField wave = FeField::interpolate(m, [](double x) { return std::sin(12.0 * x); });
  CHECK_FALSE(contact_point(wave, FeField::constant(m, 0.0)));

  const Mesh1D fine(-6.0, 6.0, 1200);
  for (double t : {0.0, 0.5}) {
    const auto [e1, e2] = explicit_pair(fine, t);
    const auto c = contact_point(e1, e2);
    REQUIRE(c);
    CHECK(std::abs(*c - eta_closed_form(t, kTraj)) <= fine.h());
  }
}

TEST_CASE("gradient jump examples") {
  const Mesh1D m(0.0, 1.0, 1000);
  const double xc = 0.4567;
  const FeField kink = FeField::interpolate(m, [&](double x) { return std::abs(x - xc); });
  CHECK(gradient_jump(kink, xc, 10) == doctest::Approx(2.0).epsilon(1e-10));
  const FeField affine = FeField::interpolate(m, [](double x) { return 3.0 - 2.0 * x; });
  CHECK(std::abs(gradient_jump(affine, xc, 10)) <= 1e-10);

  CHECK(error_kind([&] { gradient_jump(kink, 0.005, 10); }) == ErrorKind::stencil_out_of_bounds);
  CHECK(error_kind([&] { gradient_jump(kink, 1.5, 10); }) == ErrorKind::stencil_out_of_bounds);
}

TEST_CASE("gradient jump of a smooth field shrinks with h") {
  double prev = 0.0;
  for (std::size_t n : {400, 800, 1600, 3200}) {
    const Mesh1D m(-6.0, 6.0, n);
    const FeField b = FeField::interpolate(m, [](double x) { return barenblatt(x, 0.0, kProfile); });
    const double jump = std::abs(gradient_jump(b, 0.5 + 0.3 * m.h(), 10));
    CHECK(jump <= 6.0 * m.h());
    if (prev > 0.0) CHECK(jump <= 0.75 * prev);
    prev = jump;
  }
}

TEST_CASE("gradient jump ignores added affine functions") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const Mesh1D m(0.0, 1.0, 500);
  const FeField base = FeField::interpolate(m, [](double x) { return std::abs(x - 0.6) + x * x; });
  const double ref = gradient_jump(base, 0.6, JumpStencil{8, 3});
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng);
    const FeField shifted = FeField::interpolate(m, [&](double x) {
      return std::abs(x - 0.6) + x * x + a + b * x;
    });
    CHECK(gradient_jump(shifted, 0.6, JumpStencil{8, 3}) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("least squares slope") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
  CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
  const std::vector<double> y2{0.0, 1.0, 0.0, 1.0};
  CHECK(least_squares_slope(x, y2) == doctest::Approx(0.2));
}

TEST_CASE("snapshot bundles every diagnostic") {
  const Mesh1D m(0.0, 1.0, 100);
  const FeField u1 = FeField::interpolate(m, [](double x) { return x > 0.505 ? 2.0 * (x - 0.505) : 0.0; });
  const FeField u2 = FeField::interpolate(m, [](double x) { return x < 0.505 ? 0.505 - x : 0.0; });
  const Snapshot s = make_snapshot(0.25, u1, u2);
  CHECK(s.t == 0.25);
  CHECK(s.mass1 == doctest::Approx(lumped_inner_product(u1, FeField::constant(m, 1.0))));
  CHECK(s.mass2 == doctest::Approx(lumped_inner_product(u2, FeField::constant(m, 1.0))));
  CHECK(s.segregation_defect == 0.0);
  REQUIRE(s.contact_point);
  // u1 - u2 is linear between the bracketing nodes 0.50 and 0.51 only piecewise
  CHECK(*s.contact_point == doctest::Approx(0.5 + 0.01 / 3.0));
  REQUIRE(s.gradient_jump);
  CHECK(*s.gradient_jump == doctest::Approx(3.0));
  const FeField sum = field_sum(u1, u2);
  CHECK(sum[75] == doctest::Approx(0.49));

  const Snapshot none = make_snapshot(0.0, FeField::constant(m, 1.0), FeField::constant(m, 0.0));
  CHECK_FALSE(none.contact_point);
  CHECK_FALSE(none.gradient_jump);
}

TEST_CASE("Barenblatt error norms") {
  const Mesh1D m(-6.0, 6.0, 120);
  const FeField b = FeField::interpolate(m, [](double x) { return barenblatt(x, 0.2, kProfile); });
  CHECK(max_nodal_error(b, [](double x) { return barenblatt(x, 0.2, kProfile); }) == 0.0);
  const double sup = barenblatt_sup_error(b, 0.2, kProfile);
  // interpolation error of a parabola with |B''| = s^{-1}/3 is h^2 |B''| / 8 inside
  CHECK(sup >= m.h() * m.h() / (24.0 * 1.2) * (1.0 - 1e-9));
  double sampled = 0.0;
  for (int k = 0; k <= 1200000; ++k) {
    const double x = -6.0 + 1e-5 * k;
    sampled = std::max(sampled, std::abs(b.evaluate(x) - barenblatt(x, 0.2, kProfile)));
  }
  CHECK(sup >= sampled);
  CHECK(sup <= sampled + 2e-5);
}

}  // TEST_SUITE
