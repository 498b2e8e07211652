// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qfdt {

enum class ErrorCode {
  // numerics
  NotPsd,
  DimensionMismatch,
  // embedding / scoring
  LengthMismatch,
  AllZeroCounts,
  EmptyScoreList,
  // tree
  EmptyRootPartition,
  MissingFeatureValue,
  MalformedModel,
  // data pipeline
  ParseError,
  UnknownLabel,
  EmptyDataset,
  UnknownDataset,
  DegenerateSplit,
  IoError,
  // evaluation
  UndefinedMetric,
  // configuration / API misuse
  InvalidArgument,
};

// Coarse classes used by the C API status codes and the CLI exit codes.
enum class ErrorClass { Config = 2, Data = 3, Numeric = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline ErrorClass error_class(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPsd:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UndefinedMetric:
      return ErrorClass::Numeric;
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyScoreList:
      return ErrorClass::Config;
    default:
      return ErrorClass::Data;
  }
}

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qfdt
