#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simptor {

enum class ErrorCode {
  kInvalidTable,
  kInvalidHom,
  kOrderCap,
  kNotNormal,
  kNotAbelian,
  kIsoSearchCap,
  kCompositionNonzero,
  kNotProper,
  kNotNormalLevel,
  kImageNotNormalInKernel,
  kIdentityViolation,
  kLevelOrderCap,
  kNotNested,
  kFiltrationMismatch,
  kInvalidArgument,
  kParseError,
  kValidationError,
};

std::string_view error_name(ErrorCode code);

// Process exit status used by the CLI. Distinct per code, all nonzero.
int exit_status(ErrorCode code);

bool is_cap_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace simptor
