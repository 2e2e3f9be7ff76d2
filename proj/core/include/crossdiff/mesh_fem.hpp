#pragma once

// Uniform 1D meshes and continuous P1 fields with mass-lumped quadrature.

#include <cstddef>
#include <span>
#include <vector>

namespace crossdiff {

class Mesh1D {
 public:
  /// Throws invalid-range unless x_left < x_right and n_elements >= 2.
  Mesh1D(double x_left, double x_right, std::size_t n_elements);

  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x_right_; }
  std::size_t n_elements() const noexcept { return n_elements_; }
  std::size_t n_nodes() const noexcept { return n_elements_ + 1; }
  double h() const noexcept { return h_; }

  /// Node i sits at x_left + i*h; the last node is x_right exactly.
  double node(std::size_t i) const noexcept;
  std::vector<double> nodes() const;

  /// Trapezoid weight of node i: h/2 at the two ends, h elsewhere.
  double lumped_weight(std::size_t i) const noexcept;

  bool operator==(const Mesh1D&) const = default;

 private:
  double x_left_;
  double x_right_;
  std::size_t n_elements_;
  double h_;
};

Mesh1D build_uniform_mesh(double x_left, double x_right, std::size_t n_elements);

/// Nodal values of a continuous piecewise-linear function.
class FeField {
 public:
  /// Throws length-mismatch on a wrong value count and nan-detected on
  /// non-finite entries.
  FeField(Mesh1D mesh, std::vector<double> values);

  static FeField constant(const Mesh1D& mesh, double value);

  template <class F>
  static FeField interpolate(const Mesh1D& mesh, F&& f) {
    std::vector<double> v(mesh.n_nodes());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(mesh.node(i));
    return FeField(mesh, std::move(v));
  }

  const Mesh1D& mesh() const noexcept { return mesh_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Linear interpolation; clamps x to the mesh interval.
  double evaluate(double x) const noexcept;

  /// Replaces the nodal values in place; same checks as the constructor,
  /// the field is left unchanged on error.
  void assign(std::span<const double> values);

 private:
  Mesh1D mesh_;
  std::vector<double> values_;
};

/// Throws mesh-mismatch if the two fields live on different meshes.
void require_same_mesh(const FeField& f, const FeField& g);

/// Discrete inner product (f, g)^h = sum_i w_i f_i g_i with trapezoid weights.
double lumped_inner_product(const FeField& f, const FeField& g);

/// Piecewise-constant derivative, one entry per element.
std::vector<double> element_gradient(const FeField& f);

/// Mean of the two nodal values on every element.
std::vector<double> element_average(std::span<const double> nodal);

struct TridiagonalMatrix {
  std::vector<double> lower;  // (i+1, i), length n-1
  std::vector<double> diag;   // (i, i),   length n
  std::vector<double> upper;  // (i, i+1), length n-1

  std::size_t size() const noexcept { return diag.size(); }
  double at(std::size_t i, std::size_t j) const noexcept;
  std::vector<double> apply(std::span<const double> x) const;
};

/// K_ij = sum_e w_e * int_e phi_i' phi_j'. Throws length-mismatch when
/// w_elem does not have one entry per element.
TridiagonalMatrix assemble_weighted_stiffness(std::span<const double> w_elem,
                                              const Mesh1D& mesh);

}  // namespace crossdiff
