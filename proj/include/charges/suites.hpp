#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charges/charge.hpp"

namespace charges {

struct SuiteConfig {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SuiteViolation {
  std::uint64_t trial = 0;
  std::string reason;
  AtomicCharge nu;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t trials = 0;       // accepted (checked) samples
  std::uint64_t draws = 0;        // raw draws including rejected ones
  std::uint64_t seed = 0;
  std::vector<SuiteViolation> violations;
  std::int64_t elapsed_ms = 0;
};

// Sign-constancy property: a random charge nu with q in {2,3,4} atoms whose
// products nu*nu and nu*t(nu) are both positive must have constant-sign
// coefficients. Trials counts accepted samples; rejected draws are redrawn
// deterministically per trial index, so reports are independent of the
// thread count.
SuiteReport run_sign_constancy_suite(const SuiteConfig& config);

// Support-bound properties for accepted samples (both products positive,
// q in {4,...,7}): every doubled atom exponent with pair-fiber cardinality
// <= 3 carries a nonzero coefficient in nu*nu; and the atom count p of
// nu*nu obeys p >= 6 when q >= 4 and p >= 7 when q >= 5.
SuiteReport run_support_bounds_suite(const SuiteConfig& config);

// CLI names: "thm44" -> sign constancy, "lemmas" -> support bounds.
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

}  // namespace charges
