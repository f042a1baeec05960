#include "jetgeo/errors.hpp"

#include <sstream>

namespace jetgeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DegenerateHill: return "DegenerateHill";
    case ErrorCode::NotDirectType: return "NotDirectType";
    case ErrorCode::NotHillInterval: return "NotHillInterval";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::StartMismatch: return "StartMismatch";
    case ErrorCode::NotCriticalPoint: return "NotCriticalPoint";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::NoCandidate: return "NoCandidate";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {
std::string bracket_message(double lo, double hi, double residual) {
  std::ostringstream os;
  os.precision(17);
  os << "root polishing stalled in [" << lo << ", " << hi << "], residual " << residual;
  return os.str();
}
std::string quad_message(double value, double err) {
  std::ostringstream os;
  os.precision(17);
  os << "best value " << value << " with error estimate " << err;
  return os.str();
}
}  // namespace

RootNonConvergence::RootNonConvergence(double lo_, double hi_, double residual_)
    : Error(ErrorCode::NonConvergence, bracket_message(lo_, hi_, residual_)),
      lo(lo_), hi(hi_), residual(residual_) {}

QuadratureToleranceNotMet::QuadratureToleranceNotMet(double value_, double err_)
    : Error(ErrorCode::ToleranceNotMet, quad_message(value_, err_)), value(value_), error_estimate(err_) {}

}  // namespace jetgeo
