#pragma once

// End-to-end drivers shared by the command-line tool and the acceptance suite.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "crossdiff/config.hpp"
#include "crossdiff/fronttrack.hpp"
#include "crossdiff/scheme.hpp"

namespace crossdiff {

Mesh1D make_mesh(const SimulationConfig& cfg);
ModelParams make_model_params(const SimulationConfig& cfg, const Mesh1D& mesh);
SnapshotOptions make_snapshot_options(const SimulationConfig& cfg);

/// Initial (u1, u2) on the config mesh.
State make_initial_state(const SimulationConfig& cfg);

/// Initial Lagrangian state; node spacing follows the mesh spacing.
FrontState make_initial_front(const SimulationConfig& cfg);

RunResult run_eulerian(const SimulationConfig& cfg, const RunOptions& opts = {});
FrontRunResult run_fronttrack(const SimulationConfig& cfg);

struct DeltaSweepRow {
  double delta = 0.0;
  double t = 0.0;
  std::optional<double> contact_point;
  std::optional<double> gradient_jump;
  std::size_t max_iterations = 0;
};

/// One Eulerian run per delta (run concurrently); diagnostics of the final
/// state. Rows keep the order of `deltas`.
std::vector<DeltaSweepRow> sweep_delta(const SimulationConfig& cfg, std::span<const double> deltas);

struct BarenblattCheck {
  double linf_error = 0.0;   // sup over the interval of the P1 error
  double nodal_error = 0.0;  // max over the nodes
  std::size_t steps = 0;
  std::size_t max_iterations = 0;
};

/// Single species, a = 1, no reaction, delta = 0 on (-6, 6) from B(., 0)
/// with t* = 1; errors against B(., t_final).
BarenblattCheck validate_barenblatt(std::size_t n, double tau, double t_final, double tol = 1e-8);

}  // namespace crossdiff
