#include "hilbertkit/errors.hpp"

namespace hilbert {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Collinearity: return "collinearity";
    case ErrorKind::DegenerateConfiguration: return "degenerate-configuration";
    case ErrorKind::NumericDegeneracy: return "numeric-degeneracy";
    case ErrorKind::OutsideDomain: return "outside-domain";
    case ErrorKind::NotInvertible: return "not-invertible";
    case ErrorKind::NoUniqueLine: return "no-unique-line";
    case ErrorKind::StrictnessViolation: return "strictness-violation";
    case ErrorKind::BoundaryOverflow: return "boundary-overflow";
    case ErrorKind::GeodesicViolation: return "geodesic-violation";
    case ErrorKind::FitDegeneracy: return "fit-degeneracy";
    case ErrorKind::NotDiskIsometry: return "not-disk-isometry";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NotHyperbolic: return "not-hyperbolic";
    case ErrorKind::AxisInconsistency: return "axis-inconsistency";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::SameAxis: return "same-axis";
    case ErrorKind::Tangency: return "tangency";
    case ErrorKind::Tracing: return "tracing";
    case ErrorKind::InvalidConfig: return "invalid-config";
  }
  return "unknown";
}

bool is_numeric(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NumericDegeneracy:
    case ErrorKind::FitDegeneracy:
    case ErrorKind::BoundaryOverflow:
    case ErrorKind::NonConvergence:
    case ErrorKind::Tangency:
    case ErrorKind::Tracing:
      return true;
    default:
      return false;
  }
}

}  // namespace hilbert
