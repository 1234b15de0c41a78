#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "charges/error.hpp"
#include "charges/rational.hpp"

namespace charges {

// Exponent lattice lambda^(Z / 2^refinement) with lambda > 1 rational.
// Canonical form keeps lambda primitive (not a perfect power of a smaller
// rational), so distinct bases are genuinely incompatible and rationality
// questions about lambda^(k/2^s) reduce to divisibility of k by 2^s.
struct LatticeBase {
  Rational lambda = 2;
  int refinement = 0;

  bool operator==(const LatticeBase&) const = default;
};

inline constexpr int kMaxRefinement = 8;

// Finitely atomic charge a_0*delta_{x_0} + ... supported on
// {0} union {lambda^(k/2^s) : k >= 0}. The mass at zero is carried separately
// from the lattice terms; lattice coefficients are nonzero rationals keyed by
// the integer step count k (exponent = k / 2^refinement).
class AtomicCharge {
 public:
  using TermMap = std::map<std::int64_t, Rational>;

  AtomicCharge() = default;

  // Canonicalizes: primitivizes lambda, drops zero coefficients, strips
  // unused dyadic refinement, resets the base of a lattice-free charge to
  // (2, 0). Throws DomainError on negative exponents, lambda <= 1, or
  // refinement beyond max_refinement.
  static AtomicCharge make(LatticeBase base, Rational mass0, TermMap terms,
                           int max_refinement = kMaxRefinement);

  const LatticeBase& base() const { return base_; }
  const Rational& lambda() const { return base_.lambda; }
  int refinement() const { return base_.refinement; }
  const Rational& mass_at_zero() const { return mass0_; }
  const TermMap& terms() const { return terms_; }

  bool lattice_empty() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && mass0_ == 0; }
  // Number of lattice atoms (mass at zero not counted).
  int atom_count() const { return static_cast<int>(terms_.size()); }

  std::int64_t min_key() const;
  std::int64_t max_key() const;
  // Exponent of step k as a rational: k / 2^refinement.
  Rational exponent_of(std::int64_t key) const;
  // Atom value lambda^(k/2^s); throws IrrationalMoment when not rational.
  Rational value_of(std::int64_t key) const;

  bool operator==(const AtomicCharge&) const = default;

 private:
  LatticeBase base_;
  Rational mass0_ = 0;
  TermMap terms_;
};

struct Atom {
  Rational value;  // >= 0; 0 means mass at zero, otherwise must be >= 1
  Rational coefficient;
};

// Infers the finest common lattice base for the given atom values and builds
// the charge. Values must be distinct and lie in {0} union [1, inf).
// Throws NoCommonBase when the values are multiplicatively independent,
// AtomBelowOne for values in (0,1) or below zero, DuplicateAtom on repeats.
AtomicCharge from_atoms(const std::vector<Atom>& atoms);

// Multiplicative convolution: moments multiply entrywise. Requires equal
// primitive bases (BaseMismatch otherwise); a lattice-free operand adopts the
// other operand's base.
AtomicCharge convolve(const AtomicCharge& a, const AtomicCharge& b);

// Pointwise scaling by the identity function t: coefficient at lambda^e gets
// multiplied by lambda^e and the mass at zero is dropped. Requires integer
// exponents (NonIntegerExponent otherwise).
AtomicCharge scale_by_t(const AtomicCharge& mu);

// Scales every coefficient (including mass at zero) by c.
AtomicCharge scale(const AtomicCharge& mu, const Rational& c);

// Shifts all exponents by delta_key counted at the charge's own refinement.
AtomicCharge shift_exponents(const AtomicCharge& mu, std::int64_t delta_key);

// n-th moment sum(a_k * x_k^n); n = 0 includes the mass at zero. Exact; if
// the value is irrational (possible only for refinement > 0) throws
// IrrationalMoment.
Rational moment(const AtomicCharge& mu, int n);

// Moments 0..n_max.
std::vector<Rational> moments(const AtomicCharge& mu, int n_max);

inline Rational total_mass(const AtomicCharge& mu) { return moment(mu, 0); }

// True when the charge is a positive measure: mass0 >= 0 and every lattice
// coefficient > 0.
bool is_positive(const AtomicCharge& mu);

// Signs (+1/-1) of the lattice coefficients in exponent order. The mass at
// zero is not included.
std::vector<int> sign_pattern(const AtomicCharge& mu);

inline bool constant_sign(const AtomicCharge& mu) {
  for (int s : sign_pattern(mu))
    if (s < 0) return false;
  return true;
}

struct NormalizedCharge {
  AtomicCharge charge;  // minimal lattice atom moved to value 1
  Rational factor;      // value of the former minimal atom, lambda^{e_min}
};

// Divides the lattice atoms by the minimal one (mass at zero kept as is).
// Square-root existence and sign verdicts are invariant under this map.
// Throws EmptyLattice when there are no lattice terms and
// NonIntegerExponent when the minimal exponent is fractional.
NormalizedCharge normalize_support(const AtomicCharge& mu);

}  // namespace charges
