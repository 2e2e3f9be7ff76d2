#include "crossdiff/diagnostics.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "crossdiff/error.hpp"

namespace crossdiff {

double mass(const FeField& u) {
  const Mesh1D& mesh = u.mesh();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += mesh.lumped_weight(i) * u[i];
  return sum;
}

double segregation_defect(const FeField& u1, const FeField& u2) {
  return lumped_inner_product(u1, u2);
}

std::optional<double> contact_point(const FeField& u1, const FeField& u2,
                                    const ContactOptions& opts) {
  require_same_mesh(u1, u2);
  const Mesh1D& mesh = u1.mesh();

  std::optional<std::size_t> last;  // last node with a definite sign
  std::optional<std::pair<std::size_t, std::size_t>> bracket;
  int changes = 0;
  for (std::size_t i = 0; i < u1.size(); ++i) {
    const double d = u1[i] - u2[i];
    if (std::abs(d) <= opts.zero_tolerance) continue;
    if (last) {
      const double prev = u1[*last] - u2[*last];
      if ((prev > 0.0) != (d > 0.0)) {
        ++changes;
        bracket = {*last, i};
      }
    }
    last = i;
  }
  if (changes != 1) return std::nullopt;

  const auto [l, r] = *bracket;
  const double dl = u1[l] - u2[l];
  const double dr = u1[r] - u2[r];
  const double xl = mesh.node(l);
  const double xr = mesh.node(r);
  return xl + (xr - xl) * dl / (dl - dr);
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double gradient_jump(const FeField& u_sum, double x_c, const JumpStencil& stencil) {
  const Mesh1D& mesh = u_sum.mesh();
  if (stencil.width < 1) {
    throw Error(ErrorKind::stencil_out_of_bounds, "stencil width must be at least one element");
  }
  if (!(x_c > mesh.x_left() && x_c < mesh.x_right())) {
    std::ostringstream os;
    os << "x_c = " << x_c << " is not strictly inside the mesh";
    throw Error(ErrorKind::stencil_out_of_bounds, os.str());
  }
  // i_left: last node with x <= x_c; i_right: first node with x >= x_c.
  const double s = (x_c - mesh.x_left()) / mesh.h();
  auto i_left = static_cast<std::size_t>(std::floor(s));
  std::size_t i_right = mesh.node(i_left) == x_c ? i_left : i_left + 1;

  const std::size_t reach = stencil.skip + stencil.width;
  if (i_left < reach || i_right + reach > mesh.n_elements()) {
    std::ostringstream os;
    os << "stencil of " << stencil.width << "+" << stencil.skip
       << " elements around x_c = " << x_c << " leaves the mesh";
    throw Error(ErrorKind::stencil_out_of_bounds, os.str());
  }

  auto slope_over = [&](std::size_t first) {
    std::vector<double> x(stencil.width + 1), y(stencil.width + 1);
    for (std::size_t k = 0; k <= stencil.width; ++k) {
      x[k] = mesh.node(first + k);
      y[k] = u_sum[first + k];
    }
    return least_squares_slope(x, y);
  };
  const double right = slope_over(i_right + stencil.skip);
  const double left = slope_over(i_left - reach);
  return right - left;
}

double gradient_jump(const FeField& u_sum, double x_c, std::size_t stencil_width) {
  return gradient_jump(u_sum, x_c, JumpStencil{stencil_width, 2});
}

FeField field_sum(const FeField& u1, const FeField& u2) {
  require_same_mesh(u1, u2);
  std::vector<double> s(u1.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = u1[i] + u2[i];
  return FeField(u1.mesh(), std::move(s));
}

Snapshot make_snapshot(double t, FeField u1, FeField u2, const SnapshotOptions& opts) {
  require_same_mesh(u1, u2);
  Snapshot snap{t, u1, u2, mass(u1), mass(u2), segregation_defect(u1, u2), std::nullopt,
                std::nullopt};
  snap.contact_point = contact_point(snap.u1, snap.u2, opts.contact);
  if (snap.contact_point) {
    try {
      snap.gradient_jump = gradient_jump(field_sum(snap.u1, snap.u2), *snap.contact_point, opts.jump);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::stencil_out_of_bounds) throw;
    }
  }
  return snap;
}

double barenblatt_sup_error(const FeField& u, double t, const BarenblattProfile& profile) {
  const Mesh1D& mesh = u.mesh();
  const double radius = barenblatt_support_radius(t, profile);
  const double s = t + profile.t_star;
  double err = 0.0;
  for (std::size_t e = 0; e + 1 < u.size(); ++e) {
    const double xa = mesh.node(e);
    const double xb = mesh.node(e + 1);
    const double slope = (u[e + 1] - u[e]) / (xb - xa);
    auto probe = [&](double x) {
      if (x < xa || x > xb) return;
      err = std::max(err, std::abs(u[e] + slope * (x - xa) - barenblatt(x, t, profile)));
    };
    probe(xa);
    probe(xb);
    probe(-radius);
    probe(radius);
    // -x / (3 s) = slope
    const double x_star = -3.0 * s * slope;
    if (std::abs(x_star) < radius) probe(x_star);
  }
  return err;
}

}  // namespace crossdiff
