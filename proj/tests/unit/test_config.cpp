#include <doctest.h>

#include <random>
#include <string>

#include "crossdiff/config.hpp"
#include "crossdiff/error.hpp"
#include "support.hpp"

using namespace crossdiff;
using test_support::error_kind;
using test_support::source_path;

namespace {

std::string error_message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

const char* kMinimal = "[mesh]\nx_left = 0\nx_right = 1\nn = 10\n";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("shipped presets match the built-in ones") {
  for (const char* name : {"exp1", "exp2"}) {
    const SimulationConfig file = load_config(source_path(std::string("tools/presets/") + name + ".cfg"));
    CHECK_MESSAGE(file == preset_config(name), std::string(name));
  }
  const SimulationConfig e1 = preset_config("exp1");
  CHECK(e1.species[0].a == 1.0);
  CHECK(e1.species[1].a == 1.0);
  CHECK(e1.model.delta == 1e-3);
  CHECK(e1.time.tol == 1e-4);
  CHECK(e1.time.tau == 1e-5);
  CHECK(e1.mesh.n == 1000);
  CHECK(error_kind([] { preset_config("exp3"); }) == ErrorKind::invalid_argument);
}

TEST_CASE("presets differ only in the nonlinear diffusivities") {
  SimulationConfig e1 = preset_config("exp1");
  const SimulationConfig e2 = preset_config("exp2");
  CHECK(e2.species[0].a == 1.0);
  CHECK(e2.species[1].a == 3.0);
  CHECK_FALSE(e1 == e2);
  e1.species[0].a = e2.species[0].a;
  e1.species[1].a = e2.species[1].a;
  CHECK(e1 == e2);
}

TEST_CASE("minimal document uses defaults") {
  const SimulationConfig c = parse_config(kMinimal);
  CHECK(c.mesh.n == 10);
  CHECK(c.time == TimeSpec{});
  CHECK(c.model.solver == SolverKind::eulerian);
}

TEST_CASE("document errors") {
  CHECK(error_kind([] { parse_config(""); }) == ErrorKind::validation_error);
  CHECK(error_message("").find("mesh") != std::string::npos);

  const std::string dup = std::string(kMinimal) + "n = 20\n";
  CHECK(error_kind([&] { parse_config(dup); }) == ErrorKind::parse_error);
  CHECK(error_message(dup).find("line 5") != std::string::npos);
  CHECK(error_message(dup).find("line 4") != std::string::npos);

  const std::string unknown = std::string(kMinimal) + "[time]\nTau = 1\n";
  CHECK(error_kind([&] { parse_config(unknown); }) == ErrorKind::parse_error);
  CHECK(error_message(unknown).find("line 6") != std::string::npos);

  CHECK(error_kind([] { parse_config("[meshes]\n"); }) == ErrorKind::parse_error);
  CHECK(error_kind([] { parse_config("x = 1\n"); }) == ErrorKind::parse_error);
  CHECK(error_kind([] { parse_config("[mesh]\nx_left 0\n"); }) == ErrorKind::parse_error);
  CHECK(error_kind([] { parse_config("[mesh]\nx_left = zero\n"); }) == ErrorKind::parse_error);
  CHECK(error_kind([&] { parse_config(std::string(kMinimal) + "[model]\nsolver = magic\n"); }) ==
        ErrorKind::parse_error);

  const std::string bad_tau = std::string(kMinimal) + "[time]\ntau = -1\n";
  CHECK(error_kind([&] { parse_config(bad_tau); }) == ErrorKind::validation_error);
  CHECK(error_message(bad_tau).find("time.tau") != std::string::npos);
  CHECK(error_kind([] { parse_config("[mesh]\nx_left = 1\nx_right = 0\nn = 4\n"); }) ==
        ErrorKind::validation_error);
  CHECK(error_kind([] { load_config("/nonexistent/dir/x.cfg"); }) == ErrorKind::io_error);
}

TEST_CASE("comments and whitespace") {
  const SimulationConfig c = parse_config(
      "# header\n[mesh]   # trailing\n  x_left=  -1 \n\tx_right = 2\nn = 8\n\n[output]\n"
      "snapshot_times = 0.01 ,0.02\n");
  CHECK(c.mesh.x_left == -1.0);
  CHECK(c.output.snapshot_times == std::vector<double>{0.01, 0.02});
}

TEST_CASE("render then parse is the identity") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto odd = [&] { return u(rng) * std::pow(10.0, std::floor(u(rng) * 8.0 - 4.0)); };
  CHECK(parse_config(render_config(preset_config("exp1"))) == preset_config("exp1"));
  for (int trial = 0; trial < 200; ++trial) {
    SimulationConfig c;
    c.mesh = {-odd(), 1.0 + odd(), 2 + static_cast<std::size_t>(u(rng) * 500)};
    c.time = {odd() + 1e-12, 0.0, odd(), 1 + static_cast<std::size_t>(u(rng) * 50)};
    c.time.t_final = c.time.tau * (1.0 + 10.0 * u(rng));
    c.model.delta = odd();
    c.model.epsilon = odd() + 1e-9;
    c.model.q = odd() - 0.5;
    c.model.pressure_sign = u(rng) < 0.5 ? 1.0 : -1.0;
    for (auto& s : c.species) s = {odd(), -odd(), odd(), odd(), -odd(), odd()};
    if (u(rng) < 0.5) {
      c.initial.kind = InitialKind::gaussian_bumps;
      c.initial.center1 = odd();
      c.initial.width = odd() + 1e-9;
    } else {
      c.model.solver = u(rng) < 0.5 ? SolverKind::fronttrack : SolverKind::eulerian;
      c.initial.kind = InitialKind::barenblatt_split;
      c.initial.t_star = 0.5 + u(rng);
      c.initial.x0 = 0.1 * (u(rng) - 0.5);
      c.mesh.x_left = -1.0 - odd();
    }
    c.output.snapshot_times = {0.0, c.time.t_final * u(rng), c.time.t_final};
    c.output.directory = "out dir/" + std::to_string(trial);
    c.output.jump_stencil = 1 + static_cast<std::size_t>(u(rng) * 20);
    c.output.jump_skip = static_cast<std::size_t>(u(rng) * 5);
    c.output.contact_zero_tolerance = odd();
    REQUIRE_NOTHROW(c.validate());
    const SimulationConfig back = parse_config(render_config(c));
    CHECK(back == c);
  }
}

}  // TEST_SUITE
