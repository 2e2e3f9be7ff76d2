#include "crossdiff/error.hpp"

namespace crossdiff {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_range: return "invalid-range";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::mesh_mismatch: return "mesh-mismatch";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::singular_pivot_block: return "singular-pivot-block";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::nan_detected: return "nan-detected";
    case ErrorKind::degenerate_jacobian: return "degenerate-jacobian";
    case ErrorKind::degenerate_density: return "degenerate-density";
    case ErrorKind::tangled_mesh: return "tangled-mesh";
    case ErrorKind::stencil_out_of_bounds: return "stencil-out-of-bounds";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::validation_error: return "validation-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

bool is_numerical_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::singular_pivot_block:
    case ErrorKind::no_convergence:
    case ErrorKind::nan_detected:
    case ErrorKind::degenerate_jacobian:
    case ErrorKind::degenerate_density:
    case ErrorKind::tangled_mesh:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace crossdiff
