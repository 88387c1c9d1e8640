#include "unitgroup/error.hpp"

namespace unitgroup {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NotASublattice: return "NotASublattice";
    case ErrorCode::NotASpanningTree: return "NotASpanningTree";
    case ErrorCode::UnsupportedPoint: return "UnsupportedPoint";
    case ErrorCode::BoundaryNotInField: return "BoundaryNotInField";
    case ErrorCode::DegenerateConic: return "DegenerateConic";
    case ErrorCode::AuxiliaryPointNotFound: return "AuxiliaryPointNotFound";
    case ErrorCode::InvalidParametrization: return "InvalidParametrization";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::IrrationalIntersection: return "IrrationalIntersection";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::GNotClosed: return "GNotClosed";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::RankUndecidable: return "RankUndecidable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownVariable:
      return ErrorCategory::Usage;
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::RankUndecidable:
      return ErrorCategory::Precision;
    default:
      return ErrorCategory::Mathematical;
  }
}

}  // namespace unitgroup
