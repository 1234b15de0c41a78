#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace charges {

enum class ErrorCode {
  NoCommonBase,
  AtomBelowOne,
  DuplicateAtom,
  BaseMismatch,
  NonIntegerExponent,
  IrrationalMoment,
  EmptyLattice,
  ZeroAtomPresent,
  NegativeLeading,
  NoLatticeSqrt,
  RefinementLimit,
  NonPositiveMoments,
  InvalidParameters,
  SyntaxError,
};

const char* error_code_name(ErrorCode code);

// Domain error: anything a caller can trigger with valid-syntax but
// out-of-domain input. Carries a stable code name for machine output and,
// for parse errors, a byte offset into the offending text.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, std::string message,
              std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(std::move(message)), code_(code), offset_(offset) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }
  std::optional<std::size_t> offset() const { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace charges
