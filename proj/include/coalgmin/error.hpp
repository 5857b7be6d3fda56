#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coalgmin {

enum class ErrorKind {
  // functor kernel
  InvalidFunctor,
  MalformedStructure,
  PartialMap,
  SpecMismatch,
  SupportEscapesSubset,
  WeightedWithoutPool,
  ArithmeticOverflow,
  // coalgebra validation
  DanglingState,
  MissingStructure,
  ZeroWeightEntry,
  PointNotInCarrier,
  DuplicateState,
  // morphisms and factorization
  SquareDoesNotCommute,
  NotSurjective,
  NotInjective,
  NotAHomomorphism,
  WellDefinednessViolation,
  IncompatiblePartition,
  NotAPartition,
  DomainMismatch,
  // algorithms and oracles
  OracleBoundExceeded,
  SearchBoundExceeded,
  WrongFunctor,
  CyclicReachablePart,
  UnravelBoundExceeded,
  // input/output
  ParseError,
  ValidationError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidFunctor: return "InvalidFunctor";
    case ErrorKind::MalformedStructure: return "MalformedStructure";
    case ErrorKind::PartialMap: return "PartialMap";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::SupportEscapesSubset: return "SupportEscapesSubset";
    case ErrorKind::WeightedWithoutPool: return "WeightedWithoutPool";
    case ErrorKind::ArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorKind::DanglingState: return "DanglingState";
    case ErrorKind::MissingStructure: return "MissingStructure";
    case ErrorKind::ZeroWeightEntry: return "ZeroWeightEntry";
    case ErrorKind::PointNotInCarrier: return "PointNotInCarrier";
    case ErrorKind::DuplicateState: return "DuplicateState";
    case ErrorKind::SquareDoesNotCommute: return "SquareDoesNotCommute";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::WellDefinednessViolation: return "WellDefinednessViolation";
    case ErrorKind::IncompatiblePartition: return "IncompatiblePartition";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::OracleBoundExceeded: return "OracleBoundExceeded";
    case ErrorKind::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorKind::WrongFunctor: return "WrongFunctor";
    case ErrorKind::CyclicReachablePart: return "CyclicReachablePart";
    case ErrorKind::UnravelBoundExceeded: return "UnravelBoundExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception. The
/// witness, when present, names the offending state (or symbol, or block).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace coalgmin
