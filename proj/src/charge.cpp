#include "charges/charge.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace charges {

namespace {

// Keys with value 0 only (or no keys at all) put no constraint on the base.
bool base_free(const AtomicCharge& mu) {
  for (const auto& [k, c] : mu.terms())
    if (k != 0) return false;
  return true;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    throw DomainError(ErrorCode::InvalidParameters, "exponent overflow");
  return out;
}

}  // namespace

AtomicCharge AtomicCharge::make(LatticeBase base, Rational mass0, TermMap terms,
                                int max_refinement) {
  if (base.refinement < 0 || base.refinement > max_refinement)
    throw DomainError(ErrorCode::RefinementLimit,
                      "lattice refinement " + std::to_string(base.refinement) +
                          " outside [0, " + std::to_string(max_refinement) + "]");
  // mpq equality is representation-sensitive; force canonical forms at the
  // construction boundary so exact comparisons downstream are sound.
  base.lambda.canonicalize();
  mass0.canonicalize();
  for (auto it = terms.begin(); it != terms.end();) {
    it->second.canonicalize();
    if (it->second == 0)
      it = terms.erase(it);
    else
      ++it;
  }
  AtomicCharge out;
  out.mass0_ = std::move(mass0);
  if (!terms.empty() && terms.begin()->first < 0)
    throw DomainError(ErrorCode::AtomBelowOne,
                      "negative exponent: atom value below 1");
  if (terms.empty() || terms.rbegin()->first == 0) {
    // Only the exponent-0 atom (value 1) or nothing: the base is arbitrary,
    // normalize it away.
    out.base_ = LatticeBase{2, 0};
    if (!terms.empty()) out.terms_[0] = terms.begin()->second;
    return out;
  }
  if (base.lambda <= 1)
    throw DomainError(ErrorCode::InvalidParameters,
                      "lattice base must exceed 1, got " +
                          to_string(base.lambda));
  auto [power, root] = primitive_root(base.lambda);
  if (power > 1) {
    base.lambda = root;
    TermMap scaled;
    for (const auto& [k, c] : terms)
      scaled[checked_mul(k, static_cast<std::int64_t>(power))] = c;
    terms = std::move(scaled);
  }
  while (base.refinement > 0) {
    bool all_even = true;
    for (const auto& [k, c] : terms)
      if (k % 2 != 0) {
        all_even = false;
        break;
      }
    if (!all_even) break;
    TermMap halved;
    for (const auto& [k, c] : terms) halved[k / 2] = c;
    terms = std::move(halved);
    --base.refinement;
  }
  out.base_ = std::move(base);
  out.terms_ = std::move(terms);
  return out;
}

std::int64_t AtomicCharge::min_key() const {
  if (terms_.empty())
    throw DomainError(ErrorCode::EmptyLattice, "charge has no lattice atoms");
  return terms_.begin()->first;
}

std::int64_t AtomicCharge::max_key() const {
  if (terms_.empty())
    throw DomainError(ErrorCode::EmptyLattice, "charge has no lattice atoms");
  return terms_.rbegin()->first;
}

Rational AtomicCharge::exponent_of(std::int64_t key) const {
  Rational e(key, Integer(1) << base_.refinement);
  e.canonicalize();
  return e;
}

Rational AtomicCharge::value_of(std::int64_t key) const {
  std::int64_t mod = std::int64_t{1} << base_.refinement;
  if (key % mod != 0)
    throw DomainError(ErrorCode::IrrationalMoment,
                      "atom value lambda^(" + to_string(exponent_of(key)) +
                          ") is irrational");
  return rational_pow(base_.lambda, key / mod);
}

// ---------------------------------------------------------------------------
// Lattice inference.

namespace {

// Pairwise-coprime integer basis spanning the prime content of the inputs
// (each basis element > 1). Every input is a product of powers of basis
// elements.
std::vector<Integer> coprime_basis(std::vector<Integer> inputs) {
  std::vector<Integer> basis;
  std::deque<Integer> queue(inputs.begin(), inputs.end());
  while (!queue.empty()) {
    Integer x = queue.front();
    queue.pop_front();
    if (x <= 1) continue;
    bool split = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Integer g = gcd(x, basis[i]);
      if (g == 1) continue;
      Integer b = basis[i];
      basis.erase(basis.begin() + i);
      queue.push_back(g);
      queue.push_back(b / g);
      queue.push_back(x / g);
      split = true;
      break;
    }
    if (!split) basis.push_back(x);
  }
  // Root-reduce so perfect powers cannot hide a finer generator.
  for (auto& b : basis) {
    Rational r(b);
    auto [power, root] = primitive_root(r);
    if (power > 1) b = Integer(root.get_num());
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  return basis;
}

std::vector<std::int64_t> exponent_vector(const Rational& value,
                                          const std::vector<Integer>& basis) {
  std::vector<std::int64_t> exps(basis.size(), 0);
  Integer num(value.get_num()), den(value.get_den());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    while (num % basis[i] == 0) {
      num /= basis[i];
      ++exps[i];
    }
    while (den % basis[i] == 0) {
      den /= basis[i];
      --exps[i];
    }
  }
  if (num != 1 || den != 1)
    throw std::logic_error("coprime basis failed to factor an atom value");
  return exps;
}

}  // namespace

AtomicCharge from_atoms(const std::vector<Atom>& atoms) {
  Rational mass0 = 0;
  std::vector<std::pair<Rational, Rational>> lattice;  // (value, coefficient)
  std::vector<Rational> seen;
  for (const Atom& given : atoms) {
    Atom atom = given;
    atom.value.canonicalize();
    atom.coefficient.canonicalize();
    for (const auto& v : seen)
      if (v == atom.value)
        throw DomainError(ErrorCode::DuplicateAtom,
                          "duplicate atom value " + to_string(atom.value));
    seen.push_back(atom.value);
    if (atom.coefficient == 0) continue;
    if (atom.value == 0) {
      mass0 = atom.coefficient;
    } else if (atom.value < 1) {
      throw DomainError(ErrorCode::AtomBelowOne,
                        "atom value " + to_string(atom.value) +
                            " outside {0} union [1, inf)");
    } else {
      lattice.emplace_back(atom.value, atom.coefficient);
    }
  }

  std::vector<Integer> parts;
  for (const auto& [value, c] : lattice) {
    if (value == 1) continue;
    parts.emplace_back(value.get_num());
    parts.emplace_back(value.get_den());
  }
  AtomicCharge::TermMap terms;
  if (parts.empty()) {
    for (const auto& [value, c] : lattice) terms[0] = c;
    return AtomicCharge::make(LatticeBase{2, 0}, mass0, std::move(terms));
  }

  std::vector<Integer> basis = coprime_basis(parts);
  std::vector<std::vector<std::int64_t>> vectors;
  std::vector<Rational> coeffs;
  std::vector<bool> unit;  // value == 1, exponent 0
  for (const auto& [value, c] : lattice) {
    unit.push_back(value == 1);
    coeffs.push_back(c);
    vectors.push_back(value == 1 ? std::vector<std::int64_t>(basis.size(), 0)
                                 : exponent_vector(value, basis));
  }

  // Primitive direction u with every exponent vector an integer multiple.
  std::vector<std::int64_t> u;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (unit[i]) continue;
    std::int64_t content = 0;
    for (auto e : vectors[i]) content = std::gcd(content, e < 0 ? -e : e);
    u = vectors[i];
    for (auto& e : u) e /= content;
    break;
  }
  std::size_t pivot = 0;
  while (pivot < u.size() && u[pivot] == 0) ++pivot;

  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::int64_t k = 0;
    if (!unit[i]) {
      if (vectors[i][pivot] % u[pivot] != 0)
        throw DomainError(ErrorCode::NoCommonBase,
                          "atom values do not share a rational lattice base");
      k = vectors[i][pivot] / u[pivot];
      for (std::size_t j = 0; j < u.size(); ++j)
        if (vectors[i][j] != k * u[j])
          throw DomainError(ErrorCode::NoCommonBase,
                            "atom values do not share a rational lattice base");
    }
    terms[k] = coeffs[i];
  }

  Rational lambda = 1;
  for (std::size_t j = 0; j < basis.size(); ++j)
    lambda *= rational_pow(Rational(basis[j]), u[j]);
  if (lambda <= 1) throw std::logic_error("inferred lattice base <= 1");
  return AtomicCharge::make(LatticeBase{lambda, 0}, mass0, std::move(terms));
}

// ---------------------------------------------------------------------------
// Arithmetic.

namespace {

// Common (lambda, refinement) with key multipliers for each side.
struct Unified {
  LatticeBase base;
  std::int64_t scale_a = 1, scale_b = 1;
};

Unified unify(const AtomicCharge& a, const AtomicCharge& b) {
  if (base_free(a) && base_free(b)) return {LatticeBase{2, 0}, 1, 1};
  if (base_free(a)) return {b.base(), 1, 1};
  if (base_free(b)) return {a.base(), 1, 1};
  if (a.lambda() != b.lambda())
    throw DomainError(ErrorCode::BaseMismatch,
                      "incompatible lattice bases " + to_string(a.lambda()) +
                          " and " + to_string(b.lambda()));
  int refinement = std::max(a.refinement(), b.refinement());
  return {LatticeBase{a.lambda(), refinement},
          std::int64_t{1} << (refinement - a.refinement()),
          std::int64_t{1} << (refinement - b.refinement())};
}

}  // namespace

AtomicCharge convolve(const AtomicCharge& a, const AtomicCharge& b) {
  Unified u = unify(a, b);
  AtomicCharge::TermMap terms;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      terms[ka * u.scale_a + kb * u.scale_b] += ca * cb;
  // Mass at zero: pairs with at least one zero factor.
  Rational g0a = total_mass(a), g0b = total_mass(b);
  Rational mass0 = a.mass_at_zero() * g0b + b.mass_at_zero() * g0a -
                   a.mass_at_zero() * b.mass_at_zero();
  return AtomicCharge::make(u.base, std::move(mass0), std::move(terms));
}

AtomicCharge scale_by_t(const AtomicCharge& mu) {
  std::int64_t mod = std::int64_t{1} << mu.refinement();
  AtomicCharge::TermMap terms;
  for (const auto& [k, c] : mu.terms()) {
    if (k % mod != 0)
      throw DomainError(ErrorCode::NonIntegerExponent,
                        "t-scaling needs integer exponents, found " +
                            to_string(mu.exponent_of(k)));
    terms[k] = c * rational_pow(mu.lambda(), k / mod);
  }
  return AtomicCharge::make(mu.base(), 0, std::move(terms));
}

AtomicCharge scale(const AtomicCharge& mu, const Rational& c) {
  AtomicCharge::TermMap terms;
  if (c != 0)
    for (const auto& [k, coeff] : mu.terms()) terms[k] = coeff * c;
  return AtomicCharge::make(mu.base(), mu.mass_at_zero() * c, std::move(terms));
}

AtomicCharge shift_exponents(const AtomicCharge& mu, std::int64_t delta_key) {
  AtomicCharge::TermMap terms;
  for (const auto& [k, c] : mu.terms()) terms[k + delta_key] = c;
  return AtomicCharge::make(mu.base(), mu.mass_at_zero(), std::move(terms));
}

Rational moment(const AtomicCharge& mu, int n) {
  if (n < 0) throw std::invalid_argument("moment order must be >= 0");
  std::int64_t mod = std::int64_t{1} << mu.refinement();
  // lambda^(kn / 2^s) = lambda^q * theta^r with theta = lambda^(1/2^s),
  // q = kn div 2^s, r = kn mod 2^s. The powers theta^r, 0 <= r < 2^s, are
  // linearly independent over Q (lambda is primitive), so the moment is
  // rational exactly when every r != 0 bucket cancels to zero.
  std::map<std::int64_t, Rational> buckets;
  for (const auto& [k, c] : mu.terms()) {
    std::int64_t t = checked_mul(k, n);
    buckets[t % mod] += c * rational_pow(mu.lambda(), t / mod);
  }
  for (const auto& [r, sum] : buckets)
    if (r != 0 && sum != 0)
      throw DomainError(ErrorCode::IrrationalMoment,
                        "moment " + std::to_string(n) + " is irrational");
  Rational out = buckets.count(0) ? buckets[0] : Rational(0);
  if (n == 0) out += mu.mass_at_zero();
  return out;
}

std::vector<Rational> moments(const AtomicCharge& mu, int n_max) {
  std::vector<Rational> out;
  out.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) out.push_back(moment(mu, n));
  return out;
}

bool is_positive(const AtomicCharge& mu) {
  if (mu.mass_at_zero() < 0) return false;
  for (const auto& [k, c] : mu.terms())
    if (c < 0) return false;
  return true;
}

std::vector<int> sign_pattern(const AtomicCharge& mu) {
  std::vector<int> out;
  out.reserve(mu.terms().size());
  for (const auto& [k, c] : mu.terms()) out.push_back(sign(c));
  return out;
}

NormalizedCharge normalize_support(const AtomicCharge& mu) {
  std::int64_t k_min = mu.min_key();
  std::int64_t mod = std::int64_t{1} << mu.refinement();
  if (k_min % mod != 0)
    throw DomainError(ErrorCode::NonIntegerExponent,
                      "minimal exponent " + to_string(mu.exponent_of(k_min)) +
                          " is fractional; scaling factor would be irrational");
  Rational factor = rational_pow(mu.lambda(), k_min / mod);
  AtomicCharge::TermMap terms;
  for (const auto& [k, c] : mu.terms()) terms[k - k_min] = c;
  return {AtomicCharge::make(mu.base(), mu.mass_at_zero(), std::move(terms)),
          factor};
}

}  // namespace charges
