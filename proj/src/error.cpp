#include "olps/error.hpp"

namespace olps {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::RMinViolation: return "RMinViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::InvalidS: return "InvalidS";
    case ErrorCode::NonPositiveITilde: return "NonPositiveITilde";
    case ErrorCode::NonPositiveZTilde: return "NonPositiveZTilde";
    case ErrorCode::ZTildeOutOfRange: return "ZTildeOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EpsExceedsXMin: return "EpsExceedsXMin";
    case ErrorCode::EpsIExceedsRMin: return "EpsIExceedsRMin";
    case ErrorCode::EpsZTooLarge: return "EpsZTooLarge";
  }
  return "Unknown";
}

bool is_regime_refusal(ErrorCode code) noexcept {
  return code == ErrorCode::EpsExceedsXMin || code == ErrorCode::EpsIExceedsRMin ||
         code == ErrorCode::EpsZTooLarge;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

ParseError::ParseError(std::size_t row, std::size_t column, const std::string& what)
    : Error(ErrorCode::ParseError,
            "row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what),
      row_(row),
      column_(column) {}

}  // namespace olps
