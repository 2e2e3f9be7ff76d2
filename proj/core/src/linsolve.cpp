#include "crossdiff/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crossdiff/error.hpp"

namespace crossdiff {

namespace {

constexpr double kPivotTolerance = 1e-14;

// Inverse of a pivot block; block_row only feeds the diagnostic.
Mat2 invert_pivot(const Mat2& m, std::size_t block_row) {
  const double scale = m.max_abs();
  const double det = m.det();
  if (!std::isfinite(det) || std::abs(det) <= kPivotTolerance * scale * scale) {
    std::ostringstream os;
    os << "pivot block at row " << block_row << " has determinant " << det;
    throw Error(ErrorKind::singular_pivot_block, os.str());
  }
  const double inv = 1.0 / det;
  return {m.m11 * inv, -m.m01 * inv, -m.m10 * inv, m.m00 * inv};
}

}  // namespace

double Mat2::max_abs() const noexcept {
  return std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
}

std::array<double, 2> symmetric_part_eigenvalues(const Mat2& m) noexcept {
  const double a = m.m00;
  const double d = m.m11;
  const double b = 0.5 * (m.m01 + m.m10);
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {mean - radius, mean + radius};
}

BlockTridiagonal::BlockTridiagonal(std::size_t n_block_rows)
    : sub(n_block_rows > 0 ? n_block_rows - 1 : 0),
      diag(n_block_rows),
      super(n_block_rows > 0 ? n_block_rows - 1 : 0) {}

void BlockTridiagonal::check_shape() const {
  const std::size_t n = diag.size();
  const std::size_t off = n > 0 ? n - 1 : 0;
  if (sub.size() != off || super.size() != off) {
    std::ostringstream os;
    os << "block bands have lengths " << sub.size() << "/" << n << "/" << super.size();
    throw Error(ErrorKind::length_mismatch, os.str());
  }
}

std::vector<Vec2> BlockTridiagonal::apply(std::span<const Vec2> x) const {
  const std::size_t n = n_block_rows();
  std::vector<Vec2> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 s = diag[i] * x[i];
    if (i > 0) {
      const Vec2 t = sub[i - 1] * x[i - 1];
      s[0] += t[0];
      s[1] += t[1];
    }
    if (i + 1 < n) {
      const Vec2 t = super[i] * x[i + 1];
      s[0] += t[0];
      s[1] += t[1];
    }
    y[i] = s;
  }
  return y;
}

std::vector<Vec2> solve_block_thomas(const BlockTridiagonal& a, std::span<const Vec2> rhs) {
  std::vector<Vec2> x(a.n_block_rows());
  ThomasWorkspace ws;
  solve_block_thomas(a, rhs, x, ws);
  return x;
}

void solve_block_thomas(const BlockTridiagonal& a, std::span<const Vec2> rhs, std::span<Vec2> x,
                        ThomasWorkspace& ws) {
  a.check_shape();
  const std::size_t n = a.n_block_rows();
  if (rhs.size() != n || x.size() != n) {
    std::ostringstream os;
    os << "rhs has " << rhs.size() << " and solution " << x.size() << " block entries, system has "
       << n;
    throw Error(ErrorKind::length_mismatch, os.str());
  }
  if (n == 0) return;

  // c[i] = M_i^{-1} U_i and d[i] = M_i^{-1}(r_i - L_{i-1} d[i-1]) with
  // M_i = D_i - L_{i-1} c[i-1].
  auto& c = ws.c;
  auto& d = ws.d;
  c.resize(n - 1);
  d.resize(n);

  Mat2 inv = invert_pivot(a.diag[0], 0);
  if (n > 1) c[0] = inv * a.super[0];
  d[0] = inv * rhs[0];

  for (std::size_t i = 1; i < n; ++i) {
    const Mat2& lower = a.sub[i - 1];
    const Mat2 pivot = a.diag[i] - lower * c[i - 1];
    inv = invert_pivot(pivot, i);
    if (i + 1 < n) c[i] = inv * a.super[i];
    const Vec2 ld = lower * d[i - 1];
    d[i] = inv * Vec2{rhs[i][0] - ld[0], rhs[i][1] - ld[1]};
  }

  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    const Vec2 cx = c[i] * x[i + 1];
    x[i] = {d[i][0] - cx[0], d[i][1] - cx[1]};
  }
}

}  // namespace crossdiff
