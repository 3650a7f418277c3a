#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace teich {

enum class ErrorCode {
  NotNeighbors,
  EdgeNotInTriangle,
  SingularMatrix,
  NotHyperbolic,
  ZeroOffDiagonal,
  CommutatorParabolic,
  SignCondition,
  TraceTooSmall,
  MarkoffInequality,
  QuadraticConstraint,
  SideCondition,
  PreconditionViolation,
  RelationViolated,
  RecursionBreakdown,
  NoRealRoot,
  EllipticClass,
  TooManyGenerators,
  TraceMismatch,
  NormalizationFailure,
  SolvableAmalgam,
  ImageViolation,
  NoPositiveRoot,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotNeighbors: return "NotNeighbors";
    case ErrorCode::EdgeNotInTriangle: return "EdgeNotInTriangle";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::CommutatorParabolic: return "CommutatorParabolic";
    case ErrorCode::SignCondition: return "SignCondition";
    case ErrorCode::TraceTooSmall: return "TraceTooSmall";
    case ErrorCode::MarkoffInequality: return "MarkoffInequality";
    case ErrorCode::QuadraticConstraint: return "QuadraticConstraint";
    case ErrorCode::SideCondition: return "SideCondition";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::RelationViolated: return "RelationViolated";
    case ErrorCode::RecursionBreakdown: return "RecursionBreakdown";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::EllipticClass: return "EllipticClass";
    case ErrorCode::TooManyGenerators: return "TooManyGenerators";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::SolvableAmalgam: return "SolvableAmalgam";
    case ErrorCode::ImageViolation: return "ImageViolation";
    case ErrorCode::NoPositiveRoot: return "NoPositiveRoot";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this type; `code()`
/// identifies the violated contract and `what()` carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace teich
