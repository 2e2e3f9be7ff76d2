#pragma once

// Lagrangian tracking of the contact point between two segregated species.
//
// Each side of the interface carries one species on its own set of moving
// nodes X(y, t). Densities follow from the conservation identity
// w(X, t) |dX/dy| = w0(y); nodes move with v = -a w_x + p_x, where p solves
// -(w p_x)_x = f(w) on the side with p = 0 at both ends. The interface node
// moves with the plus-side value of v.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "crossdiff/diagnostics.hpp"
#include "crossdiff/mesh_fem.hpp"
#include "crossdiff/model.hpp"
#include "crossdiff/oracle.hpp"

namespace crossdiff {

/// minus: the side left of the interface, plus: the side right of it.
enum class Side { minus, plus };

struct SideState {
  std::vector<double> nodes;        // ascending current coordinates
  std::vector<double> ref_density;  // w0 at the Lagrangian labels
  double ref_spacing = 0.0;         // uniform initial node spacing
};

struct FrontState {
  double t = 0.0;
  double eta = 0.0;
  SideState minus;  // nodes run from the outer boundary up to eta
  SideState plus;   // nodes run from eta to the outer boundary
  Species plus_species = Species::first;

  const SideState& side(Side s) const noexcept { return s == Side::minus ? minus : plus; }
  SideState& side(Side s) noexcept { return s == Side::minus ? minus : plus; }
  Species species(Side s) const noexcept {
    return s == Side::plus ? plus_species : other(plus_species);
  }

  /// Throws tangled-mesh if a side is not strictly ascending and
  /// invalid-argument if the interface nodes are not glued at eta.
  void validate() const;
};

struct PressureSolution {
  Side side = Side::plus;
  std::vector<double> p;  // one value per node of the side, zero at both ends
};

struct FrontOptions {
  /// +1 solves -(w p_x)_x = f(w); -1 solves (w p_x)_x = f(w).
  double pressure_sign = 1.0;
  /// run_front splits a step into substeps no longer than
  /// cfl * min dx^2 / (2 a w); zero disables splitting.
  double cfl = 0.4;
};

using DensityProfile = std::function<double(double x)>;

/// Samples each side uniformly with the given number of elements.
FrontState make_front_state(double x_left, double eta0, double x_right, std::size_t n_minus,
                            std::size_t n_plus, const DensityProfile& minus_density,
                            const DensityProfile& plus_density, Species plus_species);

/// Split Barenblatt datum: species 1 right of x0, species 2 left of it. Node
/// counts are chosen so both sides have spacing close to `spacing`.
FrontState make_barenblatt_split_front(const InterfaceTrajectory& traj, double x_left,
                                       double x_right, double spacing);

/// Density ref_i / J_i, J_i being the discrete Jacobian dX/dy: centered
/// inside, second-order one-sided at the two end nodes. Throws
/// degenerate-jacobian when an element shrinks to 1e-3 * ref_spacing or
/// less or a Jacobian is not positive.
std::vector<double> current_density(const FrontState& state, Side side);

/// Lagrangian mass of a side, sum_i ref_i * (initial centered spacing).
double side_mass(const FrontState& state, Side side);

/// Same mass evaluated from current densities and current local spacings
/// J_i times the label length of node i.
double side_mass_current(const FrontState& state, Side side);

/// f evaluated at the side's current density, the other species being zero.
std::vector<double> side_reaction(const FrontState& state, Side side, const LotkaVolterra& lv);

/// Throws degenerate-density if the reaction is not identically zero and
/// some density is not strictly positive.
PressureSolution solve_pressure(const FrontState& state, Side side,
                                std::span<const double> reaction, const FrontOptions& opts = {});

/// v_i = -a w_x + p_x with centered slopes inside and three-point one-sided
/// slopes at the ends of the side. Nodes with zero density next to a populated node use
/// the one-sided slope towards it; nodes deep in a zero-density region carry
/// no mass and get velocities interpolated linearly between their populated
/// neighbours and the fixed outer boundary.
std::vector<double> node_velocities(const FrontState& state, Side side,
                                    const PressureSolution& pressure, double a_side);

/// One-sided -a w_x + p_x at the interface node, evaluated on `side`.
double one_sided_interface_velocity(const FrontState& state, Side side,
                                    const PressureSolution& pressure, double a_side);

/// Interface speed from the plus side (the modified Darcy law).
double interface_velocity(const FrontState& state, const PressureSolution& minus,
                          const PressureSolution& plus, double a_plus);

/// Explicit Euler transport of all nodes. Outer nodes stay put; the interface
/// node of both sides moves with interface_velocity; reference densities
/// change only through the reaction. Throws tangled-mesh when node ordering
/// is lost.
FrontState front_step(const FrontState& state, const ModelParams& params, double dt,
                      const FrontOptions& opts = {});

/// Resamples both sides onto an Eulerian mesh; nodes outside a side's range
/// get zero for that side's species.
std::pair<FeField, FeField> resample_front(const FrontState& state, const Mesh1D& mesh);

struct FrontRunResult {
  std::vector<TrajectorySample> trajectory;  // one entry per step, plus t = 0
  std::vector<Snapshot> snapshots;
  FrontState final_state;
};

/// cfl * min over elements of dx^2 / (2 a max w), both sides; infinite when
/// every density vanishes.
double stable_front_dt(const FrontState& state, const ModelParams& params,
                       const FrontOptions& opts = {});

/// Steps to t_final with fixed dt (the last step is shortened), each step
/// split into equal substeps when dt exceeds stable_front_dt. Snapshots are
/// resampled onto `mesh` at the first step reaching each requested time.
FrontRunResult run_front(const FrontState& initial, const ModelParams& params, double dt,
                         double t_final, const Mesh1D& mesh,
                         const std::vector<double>& snapshot_times,
                         const FrontOptions& opts = {}, const SnapshotOptions& snap_opts = {});

}  // namespace crossdiff
