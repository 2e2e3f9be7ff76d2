#pragma once

// Coefficients of the two-species cross-diffusion system
//
//   d_t u_i - d_x J_i = f_i(u_1, u_2),
//   J_i = a_i u_i d_x(u_1 + u_2) + b_i q u_i + c_i d_x u_i + (delta/2) d_x(u_i u),
//
// with Lotka-Volterra reactions and the clamp used to freeze coefficients.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "crossdiff/linsolve.hpp"
#include "crossdiff/mesh_fem.hpp"

namespace crossdiff {

enum class Species { first = 0, second = 1 };

constexpr std::size_t index_of(Species s) noexcept { return static_cast<std::size_t>(s); }
constexpr Species other(Species s) noexcept {
  return s == Species::first ? Species::second : Species::first;
}

struct LotkaVolterra {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta11 = 0.0;
  double beta12 = 0.0;
  double beta21 = 0.0;
  double beta22 = 0.0;

  double alpha(Species s) const noexcept { return s == Species::first ? alpha1 : alpha2; }
  /// beta_{s,j}: loss of species s caused by species j.
  double beta(Species s, Species j) const noexcept;

  bool is_zero() const noexcept;
  bool operator==(const LotkaVolterra&) const = default;
};

struct ModelParams {
  std::array<double, 2> a{1.0, 1.0};  // nonlinear (cross) diffusivities
  std::array<double, 2> b{0.0, 0.0};  // drift coefficients
  std::array<double, 2> c{0.0, 0.0};  // linear diffusivities
  std::optional<FeField> q_field;     // drift profile, zero when absent
  LotkaVolterra lv;
  double delta = 0.0;
  double epsilon = 1e-3;

  /// Throws validation-error on negative a_i, c_i, delta or non-positive epsilon.
  void validate() const;
};

/// f_i(u1, u2) = u_i (alpha_i - beta_i1 u1 - beta_i2 u2).
double lv_reaction(Species i, double u1, double u2, const LotkaVolterra& lv) noexcept;

/// clamp(s, 0, 1/epsilon); used for both the value and coefficient cutoffs.
double cutoff(double s, double epsilon) noexcept;


/// Per-element data of the regularized flux. The flux of species i on
/// element e is  sum_j diffusion[e](i,j) * d_x u_j + drift[e][i].
struct FluxCoefficients {
  std::vector<Mat2> diffusion;
  std::vector<std::array<double, 2>> drift;
};

/// Frozen coefficient of species i on every element: the element average of
/// the clamped nodal values.
std::vector<double> frozen_element_density(std::span<const double> nodal, double epsilon);

/// Throws mesh-mismatch when u1, u2 (and q, if set) do not share a mesh.
FluxCoefficients regularized_flux_coefficients(const FeField& u1, const FeField& u2,
                                               const ModelParams& params);
/// Same, reusing the storage of `out`.
void regularized_flux_coefficients(const FeField& u1, const FeField& u2, const ModelParams& params,
                                   FluxCoefficients& out);

/// exp(-(x - x_center)^2 / width) sampled at the nodes.
FeField gaussian_bump_initial(double x_center, double width, const Mesh1D& mesh);

}  // namespace crossdiff
