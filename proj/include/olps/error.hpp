#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace olps {

enum class ErrorCode {
  // input errors
  NonPositivePrice,
  RMinViolation,
  ParseError,
  RaggedRows,
  EmptyFile,
  UnsupportedKind,
  NegativeEntry,
  ZeroVector,
  InvalidS,
  NonPositiveITilde,
  NonPositiveZTilde,
  ZTildeOutOfRange,
  InvalidArgument,
  // parameter-regime refusals
  EpsExceedsXMin,
  EpsIExceedsRMin,
  EpsZTooLarge,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for the codes that signal an unsupported parameter regime (a
/// violated inequality between eta, eps and r_min) rather than bad input.
bool is_regime_refusal(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::size_t column, const std::string& what);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace olps
