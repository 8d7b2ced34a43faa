#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biberkit {

enum class ErrorCode {
  GoldTagMissing,
  EmptyChunk,
  EmptyDocument,
  TooFewRows,
  ConvergenceFailure,
  IndexOutOfRange,
  IncompleteProfile,
  SingleClass,
  EmptyTraining,
  DimensionMismatch,
  EmptyTest,
  FileNotFound,
  MalformedRecord,
  IoFailure,
  InvalidArgument,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::GoldTagMissing: return "GoldTagMissing";
    case ErrorCode::EmptyChunk: return "EmptyChunk";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IncompleteProfile: return "IncompleteProfile";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::EmptyTraining: return "EmptyTraining";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyTest: return "EmptyTest";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// Every failure in the library surfaces as this exception; code() is stable
// and is what the CLI prints in its one-line error report.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace biberkit
