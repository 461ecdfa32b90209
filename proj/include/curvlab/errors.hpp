#pragma once

#include <stdexcept>
#include <string>

namespace curvlab {

enum class ErrorCode {
  InvalidArgument,
  InvalidCurvature,
  DegenerateForm,
  SingularMap,
  NotBalanced,
  ModelMismatch,
  IncompatibleBlocks,
  InvalidSplit,
  NotAMember,
  InconsistentPermutation,
  NotSkewTsankov,
  DegenerateSpectrum,
  DegenerateHessian,
  DegeneratePlane,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace curvlab
