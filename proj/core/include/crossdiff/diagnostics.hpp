#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>

#include "crossdiff/mesh_fem.hpp"
#include "crossdiff/oracle.hpp"

namespace crossdiff {

/// Lumped integral of u.
double mass(const FeField& u);

/// Lumped integral of u1*u2; zero for segregated pairs.
double segregation_defect(const FeField& u1, const FeField& u2);

struct ContactOptions {
  /// |u1 - u2| at or below this value counts as "no sign" (regions where
  /// both species vanish, or round-off noise there).
  double zero_tolerance = 1e-10;
};

/// Abscissa of the single sign change of u1 - u2, linearly interpolated
/// between the bracketing nodes. Empty when u1 - u2 never changes sign or
/// changes it more than once.
std::optional<double> contact_point(const FeField& u1, const FeField& u2,
                                    const ContactOptions& opts = {});

struct JumpStencil {
  std::size_t width = 10;  // elements used on each side
  std::size_t skip = 2;    // elements next to x_c left out on each side
};

/// Right minus left one-sided slope of u_sum at x_c. Each slope is the
/// least-squares line through the nodes of `width` elements on its side,
/// starting `skip` elements away from x_c. Throws stencil-out-of-bounds
/// when x_c is not inside the mesh or a stencil leaves it.
double gradient_jump(const FeField& u_sum, double x_c, const JumpStencil& stencil = {});

/// Convenience overload matching the (field, point, width) form.
double gradient_jump(const FeField& u_sum, double x_c, std::size_t stencil_width);

/// Least-squares slope of the points (x_i, y_i).
double least_squares_slope(std::span<const double> x, std::span<const double> y);

struct Snapshot {
  double t = 0.0;
  FeField u1;
  FeField u2;
  double mass1 = 0.0;
  double mass2 = 0.0;
  double segregation_defect = 0.0;
  std::optional<double> contact_point;
  std::optional<double> gradient_jump;
};

struct SnapshotOptions {
  ContactOptions contact;
  JumpStencil jump;
};

/// Computes every diagnostic. The gradient jump is evaluated at the contact
/// point and left empty when there is none or the stencil does not fit.
Snapshot make_snapshot(double t, FeField u1, FeField u2, const SnapshotOptions& opts = {});

FeField field_sum(const FeField& u1, const FeField& u2);

/// max_i |u_i - g(x_i)| over the nodes.
template <class G>
double max_nodal_error(const FeField& u, G&& g) {
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    err = std::max(err, std::abs(u[i] - g(u.mesh().node(i))));
  }
  return err;
}

/// sup over the whole interval of |u - B(., t)|, u taken as the P1
/// interpolant. Exact: on each element the maximum sits at an end, at the
/// edge of the support, or where B_x equals the element slope.
double barenblatt_sup_error(const FeField& u, double t, const BarenblattProfile& profile);

}  // namespace crossdiff
