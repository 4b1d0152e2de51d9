#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stokes_euler {

enum class ErrorKind {
  InvalidArgument,
  NonPositiveEuler,
  DimensionMismatch,
  DegeneratePoint,
  NewtonDivergence,
  ZeroHessian,
  Inadmissible,
  NotReducible,
  DegenerateCritical,
  SaddleCollision,
  StepFailure,
  DecayViolation,
  QuadratureStall,
  IllConditioned,
  NonIntegerEntry,
  TriangularityViolation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPositiveEuler: return "NonPositiveEuler";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::ZeroHessian: return "ZeroHessian";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::NotReducible: return "NotReducible";
    case ErrorKind::DegenerateCritical: return "DegenerateCritical";
    case ErrorKind::SaddleCollision: return "SaddleCollision";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::DecayViolation: return "DecayViolation";
    case ErrorKind::QuadratureStall: return "QuadratureStall";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NonIntegerEntry: return "NonIntegerEntry";
    case ErrorKind::TriangularityViolation: return "TriangularityViolation";
  }
  return "Unknown";
}

/// Library-wide exception. `kind` lets callers (the CLI in particular) map a
/// failure onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace stokes_euler
