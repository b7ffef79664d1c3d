#include "qve/error.hpp"

namespace qve {

const char *to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::InvalidArgument:
    return "invalid-argument";
  case ErrorKind::UnsupportedAngularMomentum:
    return "unsupported-angular-momentum";
  case ErrorKind::DegenerateGeometry:
    return "degenerate-geometry";
  case ErrorKind::LinearDependence:
    return "linear-dependence";
  case ErrorKind::ResourceLimit:
    return "resource-limit";
  case ErrorKind::SymmetryViolation:
    return "symmetry-violation";
  case ErrorKind::InvalidCombination:
    return "invalid-combination";
  case ErrorKind::InvalidGenerator:
    return "invalid-generator";
  case ErrorKind::InvalidFold:
    return "invalid-fold";
  case ErrorKind::CalibrationDegenerate:
    return "calibration-degenerate";
  case ErrorKind::DegenerateFit:
    return "degenerate-fit";
  case ErrorKind::Parse:
    return "parse-error";
  case ErrorKind::Numeric:
    return "numeric-failure";
  }
  return "unknown";
}

} // namespace qve
