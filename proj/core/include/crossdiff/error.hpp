#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crossdiff {

enum class ErrorKind {
  invalid_range,
  invalid_argument,
  mesh_mismatch,
  length_mismatch,
  singular_pivot_block,
  no_convergence,
  nan_detected,
  degenerate_jacobian,
  degenerate_density,
  tangled_mesh,
  stencil_out_of_bounds,
  parse_error,
  validation_error,
  io_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures of the numerics themselves (as opposed to bad input).
/// The CLI maps these to exit code 2.
bool is_numerical_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace crossdiff
