#include "recmahler/error.hpp"

namespace recmahler {

const char* code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OrderTooSmall: return "OrderTooSmall";
    case ErrorCode::LastCoeffZero: return "LastCoeffZero";
    case ErrorCode::NegativeCoeff: return "NegativeCoeff";
    case ErrorCode::AllZeroInit: return "AllZeroInit";
    case ErrorCode::NonSquarefree: return "NonSquarefree";
    case ErrorCode::ConditionNotMet: return "ConditionNotMet";
    case ErrorCode::NotGrowing: return "NotGrowing";
    case ErrorCode::BadScale: return "BadScale";
    case ErrorCode::BadPoint: return "BadPoint";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::BackendMismatch: return "BackendMismatch";
    case ErrorCode::PoleAtY: return "PoleAtY";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::UnsupportedPoint: return "UnsupportedPoint";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::DuplicateBeta: return "DuplicateBeta";
    case ErrorCode::ZeroBeta: return "ZeroBeta";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::BasisTooLarge: return "BasisTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace recmahler
