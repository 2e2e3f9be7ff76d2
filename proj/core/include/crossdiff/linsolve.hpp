#pragma once

// Direct solver for block-tridiagonal systems with 2x2 blocks.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace crossdiff {

using Vec2 = std::array<double, 2>;

struct Mat2 {
  double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;

  static constexpr Mat2 identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }
  constexpr double det() const noexcept { return m00 * m11 - m01 * m10; }
  constexpr Mat2 transposed() const noexcept { return {m00, m10, m01, m11}; }
  double max_abs() const noexcept;

  friend constexpr Mat2 operator+(const Mat2& x, const Mat2& y) noexcept {
    return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
  }
  friend constexpr Mat2 operator-(const Mat2& x, const Mat2& y) noexcept {
    return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& x) noexcept {
    return {s * x.m00, s * x.m01, s * x.m10, s * x.m11};
  }
  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) noexcept {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
  }
  friend constexpr Vec2 operator*(const Mat2& x, const Vec2& v) noexcept {
    return {x.m00 * v[0] + x.m01 * v[1], x.m10 * v[0] + x.m11 * v[1]};
  }
  bool operator==(const Mat2&) const = default;
};

/// Eigenvalues of the symmetric matrix (m + m^T)/2, ascending.
std::array<double, 2> symmetric_part_eigenvalues(const Mat2& m) noexcept;

/// Block row i couples unknown i with i-1 (sub[i-1]) and i+1 (super[i]).
struct BlockTridiagonal {
  std::vector<Mat2> sub;    // block (i+1, i), length n-1
  std::vector<Mat2> diag;   // block (i, i),   length n
  std::vector<Mat2> super;  // block (i, i+1), length n-1

  explicit BlockTridiagonal(std::size_t n_block_rows = 0);

  std::size_t n_block_rows() const noexcept { return diag.size(); }

  /// Throws length-mismatch if the band lengths are inconsistent.
  void check_shape() const;

  std::vector<Vec2> apply(std::span<const Vec2> x) const;
};

/// Forward block elimination and back substitution without pivoting across
/// block rows. Throws singular-pivot-block when an eliminated pivot has
/// |det| <= 1e-14 * max|entry|^2, and length-mismatch on a wrong rhs length.
std::vector<Vec2> solve_block_thomas(const BlockTridiagonal& a, std::span<const Vec2> rhs);

/// Elimination scratch, reusable across solves of any size.
struct ThomasWorkspace {
  std::vector<Mat2> c;
  std::vector<Vec2> d;
};

/// Same as above, writing into `x` (length n) without allocating once `ws`
/// has grown to size.
void solve_block_thomas(const BlockTridiagonal& a, std::span<const Vec2> rhs, std::span<Vec2> x,
                        ThomasWorkspace& ws);

}  // namespace crossdiff
