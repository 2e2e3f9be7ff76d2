#include "crossdiff/oracle.hpp"

#include <cmath>
#include <sstream>

#include "crossdiff/error.hpp"

namespace crossdiff {

namespace {

double shifted_time(double t, const BarenblattProfile& p) {
  const double s = t + p.t_star;
  if (!(s > 0.0)) throw Error(ErrorKind::invalid_argument, "Barenblatt needs t + t_star > 0");
  return s;
}

}  // namespace

void InterfaceTrajectory::validate() const {
  if (!(t_star > 0.0)) throw Error(ErrorKind::invalid_argument, "t_star must be positive");
  const double r0 = barenblatt_support_radius(0.0, BarenblattProfile{t_star});
  if (!(std::abs(x0) < r0)) {
    std::ostringstream os;
    os << "contact point x0 = " << x0 << " is not inside the support radius " << r0;
    throw Error(ErrorKind::invalid_argument, os.str());
  }
}

double barenblatt(double x, double t, const BarenblattProfile& p) {
  const double s = shifted_time(t, p);
  const double bracket = 1.0 - x * x * std::pow(s, -2.0 / 3.0) / 12.0;
  return bracket > 0.0 ? 2.0 * std::cbrt(1.0 / s) * bracket : 0.0;
}

double barenblatt_dx(double x, double t, const BarenblattProfile& p) {
  const double s = shifted_time(t, p);
  if (std::abs(x) >= barenblatt_support_radius(t, p)) return 0.0;
  return -x / (3.0 * s);
}

double barenblatt_support_radius(double t, const BarenblattProfile& p) {
  return std::sqrt(12.0) * std::cbrt(shifted_time(t, p));
}

double barenblatt_mass() noexcept { return 8.0 / 3.0 * std::sqrt(12.0); }

double eta_closed_form(double t, const InterfaceTrajectory& traj) {
  return traj.x0 * std::cbrt((t + traj.t_star) / traj.t_star);
}

std::vector<TrajectorySample> integrate_interface_ode(const InterfaceVelocityField& g, double x0,
                                                      double t_final, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  if (!(t_final >= 0.0)) throw Error(ErrorKind::invalid_argument, "t_final must be nonnegative");

  auto rhs = [&](double x, double t) {
    const double v = g(x, t);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "velocity field returned " << v << " at x = " << x << ", t = " << t;
      throw Error(ErrorKind::nan_detected, os.str());
    }
    return -v;
  };

  std::vector<TrajectorySample> out{{0.0, x0}};
  const auto n_steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
  out.reserve(n_steps + 1);
  double x = x0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    const double t_next = (n + 1 == n_steps) ? t_final : static_cast<double>(n + 1) * dt;
    const double k = t_next - t;
    const double k1 = rhs(x, t);
    const double k2 = rhs(x + 0.5 * k * k1, t + 0.5 * k);
    const double k3 = rhs(x + 0.5 * k * k2, t + 0.5 * k);
    const double k4 = rhs(x + k * k3, t_next);
    x += k / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.push_back({t_next, x});
  }
  return out;
}

double mollified_heaviside(double x, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::invalid_argument, "epsilon must be positive");
  if (x < -epsilon) return 1.0;
  if (x > epsilon) return 0.0;
  return 0.5 * (1.0 - x / epsilon);
}

double heaviside(double x) noexcept {
  if (x > 0.0) return 1.0;
  if (x < 0.0) return 0.0;
  return 0.5;
}

std::pair<double, double> explicit_segregated(double x, double t,
                                              const InterfaceTrajectory& traj,
                                              const BarenblattProfile& p) {
  const double b = barenblatt(x, t, p);
  const double eta = eta_closed_form(t, traj);
  return {heaviside(x - eta) * b, heaviside(eta - x) * b};
}

}  // namespace crossdiff
