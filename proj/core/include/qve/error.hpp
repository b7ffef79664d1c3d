#pragma once

#include <stdexcept>
#include <string>

namespace qve {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  InvalidArgument,
  UnsupportedAngularMomentum,
  DegenerateGeometry,
  LinearDependence,
  ResourceLimit,
  SymmetryViolation,
  InvalidCombination,
  InvalidGenerator,
  InvalidFold,
  CalibrationDegenerate,
  DegenerateFit,
  Parse,
  Numeric,
};

const char *to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string &what) {
  if (!condition)
    throw Error(kind, what);
}

} // namespace qve
