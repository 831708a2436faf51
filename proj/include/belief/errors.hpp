#pragma once

#include <stdexcept>
#include <string>

namespace blc {

/// Failure kinds surfaced by the library. Each operation documents which of
/// these it can raise.
enum class ErrorKind {
  OutOfRange,
  AdditivityViolation,
  InvalidVector,
  InvalidFrame,
  InvalidBba,
  EmptyTarget,
  ForeignSubset,
  PreconditionViolated,
  ZeroShapeParameter,
  DogmaticOpinion,
  SingularEndpoint,
  BaseRateOverflow,
  DegenerateBaseRates,
  EqualBaseRates,
  MissingLimitParam,
  NotDivisible,
  DivisionByFalse,
  NotCodivisible,
  CodivisionByTrue,
  DegenerateBaseRate,
  ZeroDenominator,
  InternalRangeError,
  LexError,
  ParseError,
  UnboundVariable,
};

constexpr const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::AdditivityViolation: return "AdditivityViolation";
    case ErrorKind::InvalidVector: return "InvalidVector";
    case ErrorKind::InvalidFrame: return "InvalidFrame";
    case ErrorKind::InvalidBba: return "InvalidBba";
    case ErrorKind::EmptyTarget: return "EmptyTarget";
    case ErrorKind::ForeignSubset: return "ForeignSubset";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ZeroShapeParameter: return "ZeroShapeParameter";
    case ErrorKind::DogmaticOpinion: return "DogmaticOpinion";
    case ErrorKind::SingularEndpoint: return "SingularEndpoint";
    case ErrorKind::BaseRateOverflow: return "BaseRateOverflow";
    case ErrorKind::DegenerateBaseRates: return "DegenerateBaseRates";
    case ErrorKind::EqualBaseRates: return "EqualBaseRates";
    case ErrorKind::MissingLimitParam: return "MissingLimitParam";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::DivisionByFalse: return "DivisionByFalse";
    case ErrorKind::NotCodivisible: return "NotCodivisible";
    case ErrorKind::CodivisionByTrue: return "CodivisionByTrue";
    case ErrorKind::DegenerateBaseRate: return "DegenerateBaseRate";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::InternalRangeError: return "InternalRangeError";
    case ErrorKind::LexError: return "LexError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace blc
