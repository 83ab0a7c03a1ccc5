#include "simptor/errors.hpp"

namespace simptor {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidTable: return "InvalidTable";
    case ErrorCode::kInvalidHom: return "InvalidHom";
    case ErrorCode::kOrderCap: return "OrderCap";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kNotAbelian: return "NotAbelian";
    case ErrorCode::kIsoSearchCap: return "IsoSearchCap";
    case ErrorCode::kCompositionNonzero: return "CompositionNonzero";
    case ErrorCode::kNotProper: return "NotProper";
    case ErrorCode::kNotNormalLevel: return "NotNormalLevel";
    case ErrorCode::kImageNotNormalInKernel: return "ImageNotNormalInKernel";
    case ErrorCode::kIdentityViolation: return "IdentityViolation";
    case ErrorCode::kLevelOrderCap: return "LevelOrderCap";
    case ErrorCode::kNotNested: return "NotNested";
    case ErrorCode::kFiltrationMismatch: return "FiltrationMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  // 1 is reserved for "verify reported failures".
  return 10 + static_cast<int>(code);
}

bool is_cap_error(ErrorCode code) {
  return code == ErrorCode::kOrderCap || code == ErrorCode::kIsoSearchCap ||
         code == ErrorCode::kLevelOrderCap;
}

}  // namespace simptor
