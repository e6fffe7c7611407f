#include "fanih/error.hpp"

namespace fanih {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorKind::RedundantRay: return "RedundantRay";
    case ErrorKind::OverlappingCones: return "OverlappingCones";
    case ErrorKind::NotCommonFace: return "NotCommonFace";
    case ErrorKind::NotPurelyDimensional: return "NotPurelyDimensional";
    case ErrorKind::ConeNotInFan: return "ConeNotInFan";
    case ErrorKind::RayNotInterior: return "RayNotInterior";
    case ErrorKind::NotFullDim: return "NotFullDim";
    case ErrorKind::StrictConvexityFailed: return "StrictConvexityFailed";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::NotAFacetForm: return "NotAFacetForm";
    case ErrorKind::TruncationTooLow: return "TruncationTooLow";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::LiftFailed: return "LiftFailed";
    case ErrorKind::LiftNotUnique: return "LiftNotUnique";
    case ErrorKind::LiftMissing: return "LiftMissing";
    case ErrorKind::BookkeepingMismatch: return "BookkeepingMismatch";
    case ErrorKind::QuasiConvexityUnknown: return "QuasiConvexityUnknown";
    case ErrorKind::FaceLatticeTooLarge: return "FaceLatticeTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace fanih
