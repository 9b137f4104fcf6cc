#include "wtf/errors.hpp"

namespace wtf {

const char* error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::config_error: return "ConfigError";
    case ErrorKind::overlapping_branches: return "OverlappingBranches";
    case ErrorKind::not_onto: return "NotOnto";
    case ErrorKind::hyperbolicity_violated: return "HyperbolicityViolated";
    case ErrorKind::lambda_out_of_range: return "LambdaOutOfRange";
    case ErrorKind::invalid_tolerance: return "InvalidTolerance";
    case ErrorKind::inversion_failed: return "InversionFailed";
    case ErrorKind::not_in_partition: return "NotInPartition";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::no_sign_change: return "NoSignChange";
    case ErrorKind::too_flat: return "TooFlat";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::not_normalised: return "NotNormalised";
    case ErrorKind::not_branch_constant: return "NotBranchConstant";
    case ErrorKind::degenerate_fit: return "DegenerateFit";
    case ErrorKind::oscillation_underflow: return "OscillationUnderflow";
    case ErrorKind::io_error: return "IoError";
  }
  return "Unknown";
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::config_error:
    case ErrorKind::overlapping_branches:
    case ErrorKind::not_onto:
    case ErrorKind::hyperbolicity_violated:
    case ErrorKind::lambda_out_of_range:
    case ErrorKind::invalid_tolerance:
      return 2;
    case ErrorKind::budget_exceeded:
      return 4;
    case ErrorKind::io_error:
      return 1;
    default:
      return 3;
  }
}

}  // namespace wtf
