#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace charges {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical string form: "p/q" in lowest terms, "p" when q == 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

// Accepts "p", "p/q", leading '-'. Throws std::invalid_argument on malformed
// input or zero denominator.
Rational parse_rational(const std::string& text);

Rational rational_pow(const Rational& base, long exp);

inline Integer int_pow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline int sign(const Rational& r) { return sgn(r); }

// Exact n-th root of a nonnegative integer, if one exists.
std::optional<Integer> exact_root(const Integer& value, unsigned long n);

// Exact square root of a nonnegative rational, if one exists.
std::optional<Rational> exact_sqrt(const Rational& value);

// Largest k such that value = b^k for some rational b (value > 0, value != 1).
// Returns {k, b} with b not a perfect power.
std::pair<unsigned long, Rational> primitive_root(const Rational& value);

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace charges
