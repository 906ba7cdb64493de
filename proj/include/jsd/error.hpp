#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jsd {

enum class ErrorCode {
  DimensionMismatch,
  ZeroVector,
  NotNormalized,
  NotUnitary,
  ZeroReduction,
  NotDiagonalizable,
  InvalidDimension,
  LengthMismatch,
  SumMismatch,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code; the CLI maps it to a
/// structured error entry.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ZeroReduction: return "ZeroReduction";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace jsd
