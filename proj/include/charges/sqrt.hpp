#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "charges/charge.hpp"

namespace charges {

enum class SignVerdict { AllPositive, MixedSign };

const char* sign_verdict_name(SignVerdict v);

// Exact square-root certificate: mu == scalar * (root * root), with root
// monic (leading coefficient +1). The sign verdict refers to the monic root;
// since the scalar is positive, a positive square root of mu exists exactly
// when the verdict is AllPositive.
struct SqrtCertificate {
  AtomicCharge root;
  Rational scalar;
  SignVerdict sign_verdict;

  bool positive_root_exists() const {
    return sign_verdict == SignVerdict::AllPositive;
  }
};

struct SqrtOptions {
  // Extra dyadic refinements to try after the standard single halving fails.
  // Off by default; on a fixed-base lattice the monic root, when it exists,
  // already lives on the singly refined grid, so this is a diagnostic knob.
  int extra_refinements = 0;
  int max_refinement = kMaxRefinement;
};

// Solves xi * xi = mu / a_min over the half-step lattice by forward
// coefficient recursion, then re-convolves and compares exactly; the
// certificate is returned only when the identity holds. Throws
// ZeroAtomPresent if mu has mass at zero, NegativeLeading if the minimal
// atom's coefficient is negative, NoLatticeSqrt when no root exists on the
// refined lattice, EmptyLattice for the zero charge, RefinementLimit when
// halving would exceed the refinement cap.
SqrtCertificate charge_sqrt(const AtomicCharge& mu, const SqrtOptions& options = {});

// Positive square root witness: sqrt(scalar) * root when the verdict is
// AllPositive and the scalar is a square of a rational. Returns nullopt on
// MixedSign, NoLatticeSqrt, NegativeLeading, or an irrational sqrt(scalar)
// (in the last case a positive root still exists; consult charge_sqrt).
std::optional<AtomicCharge> positive_sqrt(const AtomicCharge& mu,
                                          const SqrtOptions& options = {});

// Square-root certificate of mu * t(mu). When mu itself has a lattice root
// xi, the result provably equals the monic normalization of xi * t(xi); this
// identity is re-checked internally and a failure throws std::logic_error.
SqrtCertificate aluthge_root(const AtomicCharge& mu, const SqrtOptions& options = {});

// Ordered index pairs (i, j) of lattice atoms of nu whose exponents sum to
// the given product exponent, counted at product_refinement = nu.refinement.
// Indices refer to atoms of nu in exponent order, 0-based.
std::vector<std::pair<int, int>> pair_fibers(const AtomicCharge& nu,
                                             std::int64_t product_key);

int fiber_cardinality(const AtomicCharge& nu, std::int64_t product_key);

}  // namespace charges
