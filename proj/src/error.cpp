#include "scatter/error.hpp"

namespace scatter {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::EmptyTable: return "empty-table";
    case ErrorCode::UnknownAttribute: return "unknown-attribute";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::CardinalityExceeded: return "cardinality-exceeded";
    case ErrorCode::EmptyAfterClip: return "empty-after-clip";
    case ErrorCode::CannotDownsample: return "cannot-downsample";
    case ErrorCode::IncompatibleLevel: return "incompatible-level";
    case ErrorCode::IncompatiblePyramid: return "incompatible-pyramid";
    case ErrorCode::InvalidWeights: return "invalid-weights";
    case ErrorCode::InvalidRegion: return "invalid-region";
    case ErrorCode::OracleScale: return "oracle-scale";
    case ErrorCode::UndefinedDistribution: return "undefined-distribution";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::CapacityExceeded: return "capacity-exceeded";
    case ErrorCode::IoError: return "io-error";
    case ErrorCode::Internal: return "internal";
  }
  return "internal";
}

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::IoError:
    case ErrorCode::Internal: return 500;
    default: return 400;
  }
}

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return 3;
    case ErrorCode::EmptyTable: return 4;
    case ErrorCode::UnknownAttribute: return 5;
    case ErrorCode::InvalidArgument: return 6;
    case ErrorCode::CardinalityExceeded: return 7;
    case ErrorCode::EmptyAfterClip: return 8;
    case ErrorCode::CannotDownsample: return 9;
    case ErrorCode::IncompatibleLevel: return 10;
    case ErrorCode::IncompatiblePyramid: return 11;
    case ErrorCode::InvalidWeights: return 12;
    case ErrorCode::InvalidRegion: return 13;
    case ErrorCode::OracleScale: return 14;
    case ErrorCode::UndefinedDistribution: return 15;
    case ErrorCode::NotFound: return 16;
    case ErrorCode::CapacityExceeded: return 17;
    case ErrorCode::IoError: return 18;
    case ErrorCode::Internal: return 1;
  }
  return 1;
}

}  // namespace scatter
