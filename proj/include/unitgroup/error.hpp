#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unitgroup {

enum class ErrorCode {
  DivisionByZero,
  DescriptorMismatch,
  InvalidInput,
  ZeroPolynomial,
  UnknownVariable,
  NotASublattice,
  NotASpanningTree,
  UnsupportedPoint,
  BoundaryNotInField,
  DegenerateConic,
  AuxiliaryPointNotFound,
  InvalidParametrization,
  PointNotOnCurve,
  IrrationalIntersection,
  NotAUnit,
  GNotClosed,
  PrecisionExhausted,
  RankUndecidable,
  ParseError,
  InternalError,
};

/// Coarse classification used for process exit codes.
enum class ErrorCategory { Usage, Mathematical, Precision };

std::string_view error_code_name(ErrorCode code);
ErrorCategory error_category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace unitgroup
