#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scatter {

/// Every failure the engine can report. Each code maps to exactly one
/// machine-readable wire string, HTTP status and CLI exit code.
enum class ErrorCode {
  ParseError,
  EmptyTable,
  UnknownAttribute,
  InvalidArgument,
  CardinalityExceeded,
  EmptyAfterClip,
  CannotDownsample,
  IncompatibleLevel,
  IncompatiblePyramid,
  InvalidWeights,
  InvalidRegion,
  OracleScale,
  UndefinedDistribution,
  NotFound,
  CapacityExceeded,
  IoError,
  Internal,
};

std::string_view code_name(ErrorCode code) noexcept;
int http_status(ErrorCode code) noexcept;
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with the 1-based input row it was detected on.
class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& message)
      : Error(ErrorCode::ParseError, "row " + std::to_string(row) + ": " + message), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace scatter
