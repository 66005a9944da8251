#pragma once

#include <stdexcept>
#include <string>

namespace curvhom {

enum class ErrorCode {
  DimensionMismatch,
  DegenerateForm,
  ZeroParameter,
  NotSelfAdjoint,
  ExcludedSignPattern,
  DegenerateMetric,
  DegeneratePlane,
  WrongDimension,
  OrthonormalizationFailure,
  NotStarCommuting,
  NullVector,
  TraceNotZero,
  InconsistentEvidence,
  NotDiagonalizable,
  NullEigenvector,
  FrameExpansionFailure,
  DivergenceNotZero,
  NullEigenvectorNorm,
  NotARealForm,
  GammaNotReal,
  StepFailure,
  SingularQ,
  SingularMatrix,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace curvhom
