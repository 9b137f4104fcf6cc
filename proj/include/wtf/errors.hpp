#pragma once

#include <stdexcept>
#include <string>

namespace wtf {

enum class ErrorKind {
  invalid_argument,
  config_error,
  overlapping_branches,
  not_onto,
  hyperbolicity_violated,
  lambda_out_of_range,
  invalid_tolerance,
  inversion_failed,
  not_in_partition,
  budget_exceeded,
  no_sign_change,
  too_flat,
  no_convergence,
  not_normalised,
  not_branch_constant,
  degenerate_fit,
  oscillation_underflow,
  io_error,
};

// Stable CamelCase name used in reports ("HyperbolicityViolated", ...).
const char* error_name(ErrorKind kind) noexcept;

// CLI exit code: 2 validation, 3 numerical failure, 4 budget, 1 otherwise.
int exit_code_for(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int index = -1)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Orbit index for NotInPartition; -1 elsewhere.
  int index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  int index_;
};

}  // namespace wtf
