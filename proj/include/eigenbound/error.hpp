#pragma once

#include <stdexcept>
#include <string>

namespace eigenbound {

// Stable error codes; the string form appears in CLI output and reports.
enum class ErrorCode {
  non_positive_eigenvalue,
  unsorted_values,
  empty_spectrum,
  non_positive_factor,
  domain_error,
  convergence_failure,
  overflow,
  bracket_exhausted,
  parse_error,
  non_manifold,
  degenerate_cell,
  empty_interior,
  unsupported_geometry,
  gate_violation,
  dimension_too_low,
  missing_curvature,
  missing_sobolev,
  operator_mismatch,
  insufficient_spectrum,
  negative_discriminant,
  no_violation_found,
  too_many_dofs,
  singular_mass,
  grid_too_coarse,
  ill_conditioned,
  invalid_config,
  io_error,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace eigenbound
