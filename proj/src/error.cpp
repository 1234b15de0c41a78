#include "charges/error.hpp"

namespace charges {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoCommonBase: return "NoCommonBase";
    case ErrorCode::AtomBelowOne: return "AtomBelowOne";
    case ErrorCode::DuplicateAtom: return "DuplicateAtom";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::IrrationalMoment: return "IrrationalMoment";
    case ErrorCode::EmptyLattice: return "EmptyLattice";
    case ErrorCode::ZeroAtomPresent: return "ZeroAtomPresent";
    case ErrorCode::NegativeLeading: return "NegativeLeading";
    case ErrorCode::NoLatticeSqrt: return "NoLatticeSqrt";
    case ErrorCode::RefinementLimit: return "RefinementLimit";
    case ErrorCode::NonPositiveMoments: return "NonPositiveMoments";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::SyntaxError: return "SyntaxError";
  }
  return "UnknownError";
}

}  // namespace charges
