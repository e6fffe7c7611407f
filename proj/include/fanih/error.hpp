#pragma once

#include <stdexcept>
#include <string>

namespace fanih {

enum class ErrorKind {
  Parse,
  NotStrictlyConvex,
  RedundantRay,
  OverlappingCones,
  NotCommonFace,
  NotPurelyDimensional,
  ConeNotInFan,
  RayNotInterior,
  NotFullDim,
  StrictConvexityFailed,
  NotAFace,
  NotAFacetForm,
  TruncationTooLow,
  NotFree,
  LiftFailed,
  LiftNotUnique,
  LiftMissing,
  BookkeepingMismatch,
  QuasiConvexityUnknown,
  FaceLatticeTooLarge,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fanih
