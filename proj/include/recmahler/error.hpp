#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace recmahler {

enum class ErrorCode {
  OrderTooSmall,
  LastCoeffZero,
  NegativeCoeff,
  AllZeroInit,
  NonSquarefree,
  ConditionNotMet,
  NotGrowing,
  BadScale,
  BadPoint,
  ZeroConstantTerm,
  BackendMismatch,
  PoleAtY,
  NotInDomain,
  UnsupportedPoint,
  ExponentOverflow,
  ZeroInput,
  DuplicateBeta,
  ZeroBeta,
  InsufficientPrecision,
  BasisTooLarge,
  ParseError,
  InvalidArgument,
};

const char* code_name(ErrorCode code);

/// Every failure surfaced by the library carries one of the codes above so
/// that reports and the CLI can echo it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by H-type evaluators when 1 - a^{R_k} y vanishes exactly.
class PoleError : public Error {
 public:
  PoleError(std::size_t index, const std::string& what)
      : Error(ErrorCode::PoleAtY, what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace recmahler
