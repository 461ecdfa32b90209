#include "curvlab/errors.hpp"

namespace curvlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidCurvature: return "InvalidCurvature";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::NotBalanced: return "NotBalanced";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::IncompatibleBlocks: return "IncompatibleBlocks";
    case ErrorCode::InvalidSplit: return "InvalidSplit";
    case ErrorCode::NotAMember: return "NotAMember";
    case ErrorCode::InconsistentPermutation: return "InconsistentPermutation";
    case ErrorCode::NotSkewTsankov: return "NotSkewTsankov";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::DegenerateHessian: return "DegenerateHessian";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
  }
  return "UnknownError";
}

}  // namespace curvlab
