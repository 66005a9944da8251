#include "curvhom/errors.hpp"

namespace curvhom {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::ZeroParameter: return "ZeroParameter";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::ExcludedSignPattern: return "ExcludedSignPattern";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::OrthonormalizationFailure: return "OrthonormalizationFailure";
    case ErrorCode::NotStarCommuting: return "NotStarCommuting";
    case ErrorCode::NullVector: return "NullVector";
    case ErrorCode::TraceNotZero: return "TraceNotZero";
    case ErrorCode::InconsistentEvidence: return "InconsistentEvidence";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::NullEigenvector: return "NullEigenvector";
    case ErrorCode::FrameExpansionFailure: return "FrameExpansionFailure";
    case ErrorCode::DivergenceNotZero: return "DivergenceNotZero";
    case ErrorCode::NullEigenvectorNorm: return "NullEigenvectorNorm";
    case ErrorCode::NotARealForm: return "NotARealForm";
    case ErrorCode::GammaNotReal: return "GammaNotReal";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::SingularQ: return "SingularQ";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace curvhom
