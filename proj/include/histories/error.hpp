#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace histories {

enum class ErrorCode {
  // partitions and path sets
  OverlappingGroups,
  NotExhaustive,
  BadIndex,
  ClosedPathInGroup,
  EmptyMask,
  // amplitudes and scenarios
  NonFinite,
  DuplicateLabel,
  PartSumMismatch,
  UnknownSlit,
  AlreadyRefined,
  UnknownScenario,
  ParseError,
  SchemaError,
  // Hilbert-space layer
  NoOpenPaths,
  DegenerateDetector,
  DimensionMismatch,
  InvalidProjector,
  InvalidHistorySet,
  InconsistentSet,
  ConditionUnsatisfied,
  NotInPartition,
  // frameworks
  TooLarge,
  NotInFramework,
  MeaninglessCombination,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OverlappingGroups: return "OverlappingGroups";
    case ErrorCode::NotExhaustive: return "NotExhaustive";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::ClosedPathInGroup: return "ClosedPathInGroup";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::PartSumMismatch: return "PartSumMismatch";
    case ErrorCode::UnknownSlit: return "UnknownSlit";
    case ErrorCode::AlreadyRefined: return "AlreadyRefined";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::NoOpenPaths: return "NoOpenPaths";
    case ErrorCode::DegenerateDetector: return "DegenerateDetector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidProjector: return "InvalidProjector";
    case ErrorCode::InvalidHistorySet: return "InvalidHistorySet";
    case ErrorCode::InconsistentSet: return "InconsistentSet";
    case ErrorCode::ConditionUnsatisfied: return "ConditionUnsatisfied";
    case ErrorCode::NotInPartition: return "NotInPartition";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotInFramework: return "NotInFramework";
    case ErrorCode::MeaninglessCombination: return "MeaninglessCombination";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
/// The message is prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace histories
