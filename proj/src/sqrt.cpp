#include "charges/sqrt.hpp"

#include <stdexcept>
#include <string>

namespace charges {

const char* sign_verdict_name(SignVerdict v) {
  return v == SignVerdict::AllPositive ? "all_positive" : "mixed_sign";
}

namespace {

// One extraction attempt on the lattice refined to `target_refinement`.
// Returns the monic root or nullopt when the final re-convolution check
// fails (no root with support on that grid).
std::optional<AtomicCharge> try_extract(const AtomicCharge& mu_monic,
                                        int target_refinement,
                                        int max_refinement) {
  std::int64_t f = std::int64_t{1}
                   << (target_refinement - mu_monic.refinement());
  std::int64_t k_min = mu_monic.min_key() * f;
  std::int64_t k_max = mu_monic.max_key() * f;
  std::int64_t span = k_max - k_min;  // even: f is even
  std::int64_t half = span / 2;

  std::vector<Rational> a(span + 1, Rational(0));
  for (const auto& [k, c] : mu_monic.terms()) a[k * f - k_min] = c;

  std::vector<Rational> h(half + 1, Rational(0));
  h[0] = 1;
  for (std::int64_t j = 1; j <= half; ++j) {
    Rational acc = a[j];
    for (std::int64_t i = 1; i < j; ++i)
      if (j - i <= half) acc -= h[i] * h[j - i];
    h[j] = acc / 2;
  }

  AtomicCharge::TermMap terms;
  for (std::int64_t j = 0; j <= half; ++j)
    if (h[j] != 0) terms[k_min / 2 + j] = h[j];
  AtomicCharge root =
      AtomicCharge::make(LatticeBase{mu_monic.lambda(), target_refinement}, 0,
                         std::move(terms), max_refinement);
  if (convolve(root, root) == mu_monic) return root;
  return std::nullopt;
}

}  // namespace

SqrtCertificate charge_sqrt(const AtomicCharge& mu, const SqrtOptions& options) {
  if (mu.lattice_empty())
    throw DomainError(ErrorCode::EmptyLattice,
                      "square root of a charge without lattice atoms");
  if (mu.mass_at_zero() != 0)
    throw DomainError(ErrorCode::ZeroAtomPresent,
                      "strip the mass at zero before extracting a root");
  Rational a_min = mu.terms().begin()->second;
  if (a_min < 0)
    throw DomainError(ErrorCode::NegativeLeading,
                      "leading coefficient " + to_string(a_min) +
                          " is negative; no real square root");
  if (mu.refinement() + 1 > options.max_refinement)
    throw DomainError(ErrorCode::RefinementLimit,
                      "halving the lattice would exceed refinement limit " +
                          std::to_string(options.max_refinement));
  AtomicCharge mu_monic = scale(mu, 1 / a_min);
  for (int extra = 0; extra <= options.extra_refinements; ++extra) {
    int target = mu.refinement() + 1 + extra;
    if (target > options.max_refinement) break;
    if (auto root = try_extract(mu_monic, target, options.max_refinement)) {
      SignVerdict verdict = constant_sign(*root) ? SignVerdict::AllPositive
                                                 : SignVerdict::MixedSign;
      return SqrtCertificate{std::move(*root), a_min, verdict};
    }
  }
  throw DomainError(ErrorCode::NoLatticeSqrt,
                    "no square root supported on the refined lattice");
}

std::optional<AtomicCharge> positive_sqrt(const AtomicCharge& mu,
                                          const SqrtOptions& options) {
  SqrtCertificate cert;
  try {
    cert = charge_sqrt(mu, options);
  } catch (const DomainError& e) {
    if (e.code() == ErrorCode::NoLatticeSqrt ||
        e.code() == ErrorCode::NegativeLeading)
      return std::nullopt;
    throw;
  }
  if (cert.sign_verdict != SignVerdict::AllPositive) return std::nullopt;
  auto s = exact_sqrt(cert.scalar);
  if (!s) return std::nullopt;
  return scale(cert.root, *s);
}

SqrtCertificate aluthge_root(const AtomicCharge& mu, const SqrtOptions& options) {
  AtomicCharge product = convolve(mu, scale_by_t(mu));
  SqrtCertificate cert = charge_sqrt(product, options);

  // When mu itself has a lattice root xi, the root of mu * t(mu) must be the
  // monic normalization of xi * t(xi).
  std::optional<SqrtCertificate> mu_cert;
  try {
    mu_cert = charge_sqrt(mu, options);
  } catch (const DomainError&) {
    mu_cert = std::nullopt;
  }
  if (mu_cert) {
    try {
      AtomicCharge expected =
          convolve(mu_cert->root, scale_by_t(mu_cert->root));
      Rational leading = expected.terms().begin()->second;
      if (!(scale(expected, 1 / leading) == cert.root))
        throw std::logic_error(
            "aluthge root does not match the convolved root of mu");
    } catch (const DomainError& e) {
      if (e.code() != ErrorCode::NonIntegerExponent) throw;
      // xi lives on fractional exponents; t(xi) leaves the lattice.
    }
  }
  return cert;
}

std::vector<std::pair<int, int>> pair_fibers(const AtomicCharge& nu,
                                             std::int64_t product_key) {
  std::vector<std::int64_t> keys;
  keys.reserve(nu.terms().size());
  for (const auto& [k, c] : nu.terms()) keys.push_back(k);
  std::vector<std::pair<int, int>> fibers;
  for (int i = 0; i < static_cast<int>(keys.size()); ++i)
    for (int j = 0; j < static_cast<int>(keys.size()); ++j)
      if (keys[i] + keys[j] == product_key) fibers.emplace_back(i, j);
  return fibers;
}

int fiber_cardinality(const AtomicCharge& nu, std::int64_t product_key) {
  return static_cast<int>(pair_fibers(nu, product_key).size());
}

}  // namespace charges
