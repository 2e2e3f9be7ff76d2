#pragma once

// Line-oriented experiment configuration:
//
//   # comment
//   [mesh]
//   x_left = 0
//   ...
//
// Sections: [mesh] (required), [time], [model], [species.1], [species.2],
// [initial], [output]. Keys are case-sensitive; unknown or repeated keys are
// parse errors.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "crossdiff/scheme.hpp"

namespace crossdiff {

enum class InitialKind { gaussian_bumps, barenblatt_split, file };
enum class SolverKind { eulerian, fronttrack };

std::string_view to_string(InitialKind k) noexcept;
std::string_view to_string(SolverKind k) noexcept;

struct MeshSpec {
  double x_left = 0.0;
  double x_right = 1.0;
  std::size_t n = 1000;
  bool operator==(const MeshSpec&) const = default;
};

struct SpeciesSpec {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double alpha = 0.0;
  double beta1 = 0.0;  // loss caused by species 1
  double beta2 = 0.0;  // loss caused by species 2
  bool operator==(const SpeciesSpec&) const = default;
};

struct ModelSpec {
  double delta = 1e-3;
  double epsilon = 1e-3;
  double q = 0.0;  // constant drift profile
  SolverKind solver = SolverKind::eulerian;
  double pressure_sign = 1.0;
  bool operator==(const ModelSpec&) const = default;
};

struct InitialSpec {
  InitialKind kind = InitialKind::gaussian_bumps;
  double center1 = 0.4;
  double center2 = 0.6;
  double width = 0.001;
  double x0 = 0.5;
  double t_star = 1.0;
  std::string path;
  bool operator==(const InitialSpec&) const = default;
};

struct OutputSpec {
  std::vector<double> snapshot_times;
  std::string directory = "out";
  std::size_t jump_stencil = 10;
  std::size_t jump_skip = 2;
  double contact_zero_tolerance = 1e-10;
  bool operator==(const OutputSpec&) const = default;
};

struct TimeSpec {
  double tau = 1e-5;
  double t_final = 0.05;
  double tol = 1e-4;
  std::size_t k_max = 100;
  bool operator==(const TimeSpec&) const = default;

  TimeStepping stepping() const { return {tau, t_final, tol, k_max}; }
};

struct SimulationConfig {
  MeshSpec mesh;
  TimeSpec time;
  ModelSpec model;
  std::array<SpeciesSpec, 2> species;
  InitialSpec initial;
  OutputSpec output;

  bool operator==(const SimulationConfig&) const = default;

  /// Throws validation-error naming the offending key path.
  void validate() const;
};

/// Throws parse-error (with line number) or validation-error (with key path).
SimulationConfig parse_config(std::string_view text);

/// Reads and parses a file; io-error if it cannot be read.
SimulationConfig load_config(const std::string& path);

/// Inverse of parse_config for every valid config.
std::string render_config(const SimulationConfig& cfg);

/// Built-in Experiment presets ("exp1": a1 = a2 = 1, "exp2": a1 = 1, a2 = 3).
/// Throws invalid-argument for any other name.
SimulationConfig preset_config(std::string_view name);

}  // namespace crossdiff
