#pragma once

// Closed-form references for the segregated porous-medium benchmark.
//
// B(x,t) = 2 s^{-1/3} [1 - x^2 s^{-2/3} / 12]_+,  s = t + t_star,
// solves u_t = (u u_x)_x with support |x| <= R(t) = sqrt(12) s^{1/3} and
// total mass (8/3) sqrt(12). Splitting B at a contact point eta(t) that
// moves with the local velocity -B_x gives a segregated pair that conserves
// the mass of each part.

#include <functional>
#include <utility>
#include <vector>

namespace crossdiff {

struct BarenblattProfile {
  double t_star = 1.0;
};

struct InterfaceTrajectory {
  double x0 = 0.0;
  double t_star = 1.0;

  /// Throws invalid-argument if t_star <= 0 or |x0| is not inside the
  /// initial support.

  void validate() const;
};

double barenblatt(double x, double t, const BarenblattProfile& p);
double barenblatt_dx(double x, double t, const BarenblattProfile& p);
double barenblatt_support_radius(double t, const BarenblattProfile& p);
/// Total mass of B, independent of t.
double barenblatt_mass() noexcept;

/// eta(t) = x0 ((t + t*) / t*)^{1/3}, the exact solution of eta' = -B_x(eta, t),
/// eta(0) = x0.
double eta_closed_form(double t, const InterfaceTrajectory& traj);

struct TrajectorySample {
  double t;
  double eta;
};

using InterfaceVelocityField = std::function<double(double x, double t)>;

/// Classical RK4 for eta' = -G(eta, t), eta(0) = x0. The last step is
/// shortened to land on t_final. Throws nan-detected if G is not finite.
std::vector<TrajectorySample> integrate_interface_ode(const InterfaceVelocityField& g, double x0,
                                                      double t_final, double dt);

/// 1 for x < -eps, (1 - x/eps)/2 on [-eps, eps], 0 for x > eps.
double mollified_heaviside(double x, double epsilon);

/// Sharp Heaviside with H(0) = 1/2.
double heaviside(double x) noexcept;

/// (u1, u2) = (H(x - eta) B, H(eta - x) B).
std::pair<double, double> explicit_segregated(double x, double t,
                                              const InterfaceTrajectory& traj,
                                              const BarenblattProfile& p);

}  // namespace crossdiff
