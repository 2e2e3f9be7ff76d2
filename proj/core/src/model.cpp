#include "crossdiff/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crossdiff/error.hpp"

namespace crossdiff {

double LotkaVolterra::beta(Species s, Species j) const noexcept {
  if (s == Species::first) return j == Species::first ? beta11 : beta12;
  return j == Species::first ? beta21 : beta22;
}

bool LotkaVolterra::is_zero() const noexcept {
  return alpha1 == 0.0 && alpha2 == 0.0 && beta11 == 0.0 && beta12 == 0.0 && beta21 == 0.0 &&
         beta22 == 0.0;
}

void ModelParams::validate() const {
  auto fail = [](const char* key, double v) {
    std::ostringstream os;
    os << key << " = " << v << " is out of range";
    throw Error(ErrorKind::validation_error, os.str());
  };
  for (std::size_t i = 0; i < 2; ++i) {
    if (!(a[i] >= 0.0) || !std::isfinite(a[i])) fail(i == 0 ? "a1" : "a2", a[i]);
    if (!(c[i] >= 0.0) || !std::isfinite(c[i])) fail(i == 0 ? "c1" : "c2", c[i]);
    if (!std::isfinite(b[i])) fail(i == 0 ? "b1" : "b2", b[i]);
  }
  if (!(delta >= 0.0) || !std::isfinite(delta)) fail("delta", delta);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) fail("epsilon", epsilon);
  for (double v : {lv.alpha1, lv.alpha2, lv.beta11, lv.beta12, lv.beta21, lv.beta22}) {
    if (!std::isfinite(v)) fail("lotka-volterra coefficient", v);
  }
}

double lv_reaction(Species i, double u1, double u2, const LotkaVolterra& lv) noexcept {
  const double ui = i == Species::first ? u1 : u2;
  return ui * (lv.alpha(i) - lv.beta(i, Species::first) * u1 - lv.beta(i, Species::second) * u2);
}

double cutoff(double s, double epsilon) noexcept { return std::clamp(s, 0.0, 1.0 / epsilon); }

std::vector<double> frozen_element_density(std::span<const double> nodal, double epsilon) {
  std::vector<double> avg(nodal.size() - 1);
  for (std::size_t e = 0; e < avg.size(); ++e) {
    avg[e] = 0.5 * (cutoff(nodal[e], epsilon) + cutoff(nodal[e + 1], epsilon));
  }
  return avg;
}

FluxCoefficients regularized_flux_coefficients(const FeField& u1, const FeField& u2,
                                               const ModelParams& params) {
  FluxCoefficients out;
  regularized_flux_coefficients(u1, u2, params, out);
  return out;
}

void regularized_flux_coefficients(const FeField& u1, const FeField& u2, const ModelParams& params,
                                   FluxCoefficients& out) {
  require_same_mesh(u1, u2);
  if (params.q_field) require_same_mesh(u1, *params.q_field);

  const std::size_t n_elem = u1.size() - 1;
  const double eps = params.epsilon;
  const auto& [a1, a2] = params.a;
  const auto& [c1, c2] = params.c;
  const double half_delta = 0.5 * params.delta;

  out.diffusion.resize(n_elem);
  out.drift.resize(n_elem);
  for (std::size_t e = 0; e < n_elem; ++e) {
    const double w1 = 0.5 * (cutoff(u1[e], eps) + cutoff(u1[e + 1], eps));
    const double w2 = 0.5 * (cutoff(u2[e], eps) + cutoff(u2[e + 1], eps));
    const double sum = w1 + w2;
    Mat2& d = out.diffusion[e];
    d.m00 = a1 * w1 + c1 + half_delta * (sum + w1);
    d.m01 = a1 * w1 + half_delta * w1;
    d.m10 = a2 * w2 + half_delta * w2;
    d.m11 = a2 * w2 + c2 + half_delta * (sum + w2);
    const double q = params.q_field ? 0.5 * ((*params.q_field)[e] + (*params.q_field)[e + 1]) : 0.0;
    out.drift[e] = {params.b[0] * q * w1, params.b[1] * q * w2};
  }
}

FeField gaussian_bump_initial(double x_center, double width, const Mesh1D& mesh) {
  if (!(width > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "gaussian bump width must be positive");
  }
  return FeField::interpolate(mesh, [&](double x) {
    const double d = x - x_center;
    return std::exp(-d * d / width);
  });
}

}  // namespace crossdiff
