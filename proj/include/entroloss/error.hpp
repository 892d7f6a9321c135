#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entroloss {

enum class ErrorKind {
  NonHermitian,
  NotPositive,
  NotUnitary,
  ConvergenceFailure,
  DimensionOverflow,
  DimensionMismatch,
  BadFactorization,
  InconsistentEnsemble,
  NumericalInconsistency,
  NotMajorized,
  FiniteTableLaw,
  LambdaBelowG,
  TruncationInadequate,
  SupportEscapesTruncation,
  QExceedsOne,
  NotAChannel,
  InvalidPOVM,
  NotPure,
  IncompatiblePurification,
  FunctionalUndefined,
  UnknownSuite,
  ConfigError,
  MissingArtifacts,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadFactorization: return "BadFactorization";
    case ErrorKind::InconsistentEnsemble: return "InconsistentEnsemble";
    case ErrorKind::NumericalInconsistency: return "NumericalInconsistency";
    case ErrorKind::NotMajorized: return "NotMajorized";
    case ErrorKind::FiniteTableLaw: return "FiniteTableLaw";
    case ErrorKind::LambdaBelowG: return "LambdaBelowG";
    case ErrorKind::TruncationInadequate: return "TruncationInadequate";
    case ErrorKind::SupportEscapesTruncation: return "SupportEscapesTruncation";
    case ErrorKind::QExceedsOne: return "QExceedsOne";
    case ErrorKind::NotAChannel: return "NotAChannel";
    case ErrorKind::InvalidPOVM: return "InvalidPOVM";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::IncompatiblePurification: return "IncompatiblePurification";
    case ErrorKind::FunctionalUndefined: return "FunctionalUndefined";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::MissingArtifacts: return "MissingArtifacts";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace entroloss
