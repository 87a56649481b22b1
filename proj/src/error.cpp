#include "splaylab/error.hpp"

namespace splaylab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kRotateAtRoot: return "RotateAtRoot";
    case ErrorCode::kAtRoot: return "AtRoot";
    case ErrorCode::kInvalidHandle: return "InvalidHandle";
    case ErrorCode::kKeyNotFound: return "KeyNotFound";
    case ErrorCode::kNotAPermutation: return "NotAPermutation";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kSymmetricOrderViolation: return "SymmetricOrderViolation";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kWrongClass: return "WrongClass";
    case ErrorCode::kSizeNotPerfect: return "SizeNotPerfect";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace splaylab
