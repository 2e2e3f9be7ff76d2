#include "crossdiff/mesh_fem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crossdiff/error.hpp"

namespace crossdiff {

Mesh1D::Mesh1D(double x_left, double x_right, std::size_t n_elements)
    : x_left_(x_left), x_right_(x_right), n_elements_(n_elements), h_(0.0) {
  if (!std::isfinite(x_left) || !std::isfinite(x_right) || !(x_left < x_right)) {
    std::ostringstream os;
    os << "mesh interval must satisfy x_left < x_right, got [" << x_left << ", " << x_right << "]";
    throw Error(ErrorKind::invalid_range, os.str());
  }
  if (n_elements < 2) {
    throw Error(ErrorKind::invalid_range, "mesh needs at least 2 elements");
  }
  h_ = (x_right - x_left) / static_cast<double>(n_elements);
}

double Mesh1D::node(std::size_t i) const noexcept {
  if (i == n_elements_) return x_right_;
  return x_left_ + static_cast<double>(i) * h_;
}

std::vector<double> Mesh1D::nodes() const {
  std::vector<double> x(n_nodes());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = node(i);
  return x;
}

double Mesh1D::lumped_weight(std::size_t i) const noexcept {
  return (i == 0 || i == n_elements_) ? 0.5 * h_ : h_;
}

Mesh1D build_uniform_mesh(double x_left, double x_right, std::size_t n_elements) {
  return Mesh1D(x_left, x_right, n_elements);
}

namespace {

void check_nodal_values(const Mesh1D& mesh, std::span<const double> values) {
  if (values.size() != mesh.n_nodes()) {
    std::ostringstream os;
    os << "field has " << values.size() << " values for a mesh with " << mesh.n_nodes()
       << " nodes";
    throw Error(ErrorKind::length_mismatch, os.str());
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os << "non-finite nodal value at node " << i;
      throw Error(ErrorKind::nan_detected, os.str());
    }
  }
}

}  // namespace

FeField::FeField(Mesh1D mesh, std::vector<double> values)
    : mesh_(mesh), values_(std::move(values)) {
  check_nodal_values(mesh_, values_);
}

void FeField::assign(std::span<const double> values) {
  check_nodal_values(mesh_, values);
  std::copy(values.begin(), values.end(), values_.begin());
}

FeField FeField::constant(const Mesh1D& mesh, double value) {
  return FeField(mesh, std::vector<double>(mesh.n_nodes(), value));
}

double FeField::evaluate(double x) const noexcept {
  const double s = std::clamp((x - mesh_.x_left()) / mesh_.h(), 0.0,
                              static_cast<double>(mesh_.n_elements()));
  auto e = static_cast<std::size_t>(s);
  if (e >= mesh_.n_elements()) e = mesh_.n_elements() - 1;
  const double theta = s - static_cast<double>(e);
  return (1.0 - theta) * values_[e] + theta * values_[e + 1];
}

void require_same_mesh(const FeField& f, const FeField& g) {
  if (!(f.mesh() == g.mesh())) {
    throw Error(ErrorKind::mesh_mismatch, "fields are defined on different meshes");
  }
}

double lumped_inner_product(const FeField& f, const FeField& g) {
  require_same_mesh(f, g);
  const Mesh1D& mesh = f.mesh();
  double sum = 0.0;
  for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
    sum += mesh.lumped_weight(i) * (f[i] * g[i]);
  }
  return sum;
}

std::vector<double> element_gradient(const FeField& f) {
  const Mesh1D& mesh = f.mesh();
  std::vector<double> grad(mesh.n_elements());
  for (std::size_t e = 0; e < grad.size(); ++e) grad[e] = (f[e + 1] - f[e]) / mesh.h();
  return grad;
}

std::vector<double> element_average(std::span<const double> nodal) {
  std::vector<double> avg(nodal.empty() ? 0 : nodal.size() - 1);
  for (std::size_t e = 0; e < avg.size(); ++e) avg[e] = 0.5 * (nodal[e] + nodal[e + 1]);
  return avg;
}

double TridiagonalMatrix::at(std::size_t i, std::size_t j) const noexcept {
  if (i == j) return diag[i];
  if (j + 1 == i) return lower[j];
  if (i + 1 == j) return upper[i];
  return 0.0;
}

std::vector<double> TridiagonalMatrix::apply(std::span<const double> x) const {
  const std::size_t n = size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += lower[i - 1] * x[i - 1];
    if (i + 1 < n) s += upper[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

TridiagonalMatrix assemble_weighted_stiffness(std::span<const double> w_elem,
                                              const Mesh1D& mesh) {
  if (w_elem.size() != mesh.n_elements()) {
    std::ostringstream os;
    os << "expected " << mesh.n_elements() << " element weights, got " << w_elem.size();
    throw Error(ErrorKind::length_mismatch, os.str());
  }
  const std::size_t n = mesh.n_nodes();
  TridiagonalMatrix k{std::vector<double>(n - 1, 0.0), std::vector<double>(n, 0.0),
                      std::vector<double>(n - 1, 0.0)};
  const double inv_h = 1.0 / mesh.h();
  for (std::size_t e = 0; e < w_elem.size(); ++e) {
    const double c = w_elem[e] * inv_h;
    k.diag[e] += c;
    k.diag[e + 1] += c;
    k.upper[e] -= c;
    k.lower[e] -= c;
  }
  return k;
}

}  // namespace crossdiff
