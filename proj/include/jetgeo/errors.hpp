#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jetgeo {

enum class ErrorCode {
  InvalidArgument,
  NonConvergence,
  DegenerateHill,
  NotDirectType,
  NotHillInterval,
  NotPeriodic,
  StartMismatch,
  NotCriticalPoint,
  NotSymmetric,
  ToleranceNotMet,
  NoCandidate,
  NotOdd,
  NotApplicable,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Root polishing failed to reach the residual bound; the bracket is still valid.
class RootNonConvergence : public Error {
 public:
  RootNonConvergence(double lo, double hi, double residual);
  double lo, hi, residual;
};

/// Quadrature ran out of refinement levels; carries the best estimate.
class QuadratureToleranceNotMet : public Error {
 public:
  QuadratureToleranceNotMet(double value, double error_estimate);
  double value, error_estimate;
};

}  // namespace jetgeo
