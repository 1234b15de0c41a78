#pragma once

#include <string>

#include "charges/charge.hpp"

namespace charges {

// Measure expression grammar (whitespace-insensitive):
//   expr := term (('+' | '-') term)*
//   term := [rational ['*']] 'd' '(' rational ')'
// Example: "d(4) + 2*d(8) - 3/5*d(64)". Repeated atom values accumulate.
// Throws DomainError(SyntaxError) with a byte offset on malformed input and
// propagates from_atoms domain errors.
AtomicCharge parse_measure(const std::string& text);

// Expression form of a charge; inverse of parse_measure on canonical
// charges. Requires integer exponents (NonIntegerExponent otherwise, since
// atom values would be irrational).
std::string print_measure(const AtomicCharge& mu);

}  // namespace charges
