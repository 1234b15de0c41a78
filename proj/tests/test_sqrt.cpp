#include <doctest.h>

#include "charges/expr.hpp"
#include "charges/sqrt.hpp"
#include "oracle.hpp"

using namespace charges;

namespace {

ErrorCode sqrt_error(const AtomicCharge& mu, const SqrtOptions& options = {}) {
  try {
    charge_sqrt(mu, options);
    throw std::logic_error("expected charge_sqrt to throw");
  } catch (const DomainError& e) {
    return e.code();
  }
}

}  // namespace

TEST_CASE("charge_sqrt extracts an exact monic root") {
  AtomicCharge mu = parse_measure("d(4) + 2 d(8) + d(16)");
  SqrtCertificate cert = charge_sqrt(mu);
  CHECK(cert.root == parse_measure("d(2) + d(4)"));
  CHECK(cert.scalar == 1);
  CHECK(cert.sign_verdict == SignVerdict::AllPositive);
  CHECK(cert.positive_root_exists());
  CHECK(convolve(cert.root, cert.root) == mu);
}

TEST_CASE("the known nine-atom square has a mixed-sign root") {
  AtomicCharge xi = parse_measure("d(2)+d(4)-1/5*d(8)+d(16)+d(32)");
  AtomicCharge mu = convolve(xi, xi);
  SqrtCertificate cert = charge_sqrt(mu);
  CHECK(cert.root == xi);
  CHECK(cert.scalar == 1);
  CHECK(cert.sign_verdict == SignVerdict::MixedSign);
  CHECK_FALSE(positive_sqrt(mu).has_value());

  // mu * t(mu) = (xi * t(xi))^2 does have a positive root.
  AtomicCharge mu_t_mu = convolve(mu, scale_by_t(mu));
  AtomicCharge xi_t_xi = convolve(xi, scale_by_t(xi));
  SqrtCertificate big = charge_sqrt(mu_t_mu);
  CHECK(big.scalar == 4);
  CHECK(big.root == scale(xi_t_xi, Rational(1, 2)));
  CHECK(big.sign_verdict == SignVerdict::AllPositive);
  auto witness = positive_sqrt(mu_t_mu);
  REQUIRE(witness.has_value());
  CHECK(*witness == xi_t_xi);
  CHECK(convolve(*witness, *witness) == mu_t_mu);
}

TEST_CASE("scalar handling") {
  AtomicCharge mu4 = parse_measure("4 d(4) + 8 d(8) + 4 d(16)");
  SqrtCertificate cert = charge_sqrt(mu4);
  CHECK(cert.root == parse_measure("d(2) + d(4)"));
  CHECK(cert.scalar == 4);
  auto witness = positive_sqrt(mu4);
  REQUIRE(witness.has_value());
  CHECK(*witness == parse_measure("2 d(2) + 2 d(4)"));

  // Scalar 2 is not a rational square: a positive root exists but has no
  // rational-coefficient witness.
  AtomicCharge mu2 = parse_measure("2 d(4) + 4 d(8) + 2 d(16)");
  SqrtCertificate cert2 = charge_sqrt(mu2);
  CHECK(cert2.scalar == 2);
  CHECK(cert2.sign_verdict == SignVerdict::AllPositive);
  CHECK_FALSE(positive_sqrt(mu2).has_value());
}

TEST_CASE("roots may live on the halved lattice") {
  SqrtCertificate cert = charge_sqrt(parse_measure("d(2)"));
  CHECK(cert.root == AtomicCharge::make(LatticeBase{2, 1}, 0, {{1, 1}}));
  CHECK(cert.scalar == 1);
  CHECK(convolve(cert.root, cert.root) == parse_measure("d(2)"));

  AtomicCharge odd = parse_measure("d(8) + 2 d(16) + d(32)");
  SqrtCertificate odd_cert = charge_sqrt(odd);
  CHECK(odd_cert.root ==
        AtomicCharge::make(LatticeBase{2, 1}, 0, {{3, 1}, {5, 1}}));
  CHECK(odd_cert.root.exponent_of(3) == Rational(3, 2));
  CHECK(convolve(odd_cert.root, odd_cert.root) == odd);
}

TEST_CASE("charge_sqrt failure modes") {
  CHECK(sqrt_error(parse_measure("d(4) + d(8)")) == ErrorCode::NoLatticeSqrt);
  CHECK(sqrt_error(parse_measure("1/2 d(0) + d(4) + 2 d(8) + d(16)")) ==
        ErrorCode::ZeroAtomPresent);
  CHECK(sqrt_error(parse_measure("-d(4) + d(8)")) == ErrorCode::NegativeLeading);
  CHECK(sqrt_error(AtomicCharge{}) == ErrorCode::EmptyLattice);
  CHECK(sqrt_error(parse_measure("3 d(0)")) == ErrorCode::EmptyLattice);
  CHECK(sqrt_error(AtomicCharge::make(LatticeBase{2, 8}, 0, {{1, 1}})) ==
        ErrorCode::RefinementLimit);
  CHECK(sqrt_error(AtomicCharge::make(LatticeBase{2, 4}, 0, {{1, 1}}),
                   SqrtOptions{0, 4}) == ErrorCode::RefinementLimit);
  CHECK_THROWS_AS(positive_sqrt(AtomicCharge{}), DomainError);
  CHECK_FALSE(positive_sqrt(parse_measure("d(4) + d(8)")).has_value());
  CHECK_FALSE(positive_sqrt(parse_measure("-d(4) + d(8)")).has_value());
}

TEST_CASE("extra refinements never change integer-lattice verdicts") {
  AtomicCharge mu = parse_measure("d(4) + 2 d(8) + d(16)");
  SqrtOptions deep{2, kMaxRefinement};
  SqrtCertificate a = charge_sqrt(mu), b = charge_sqrt(mu, deep);
  CHECK(a.root == b.root);
  CHECK(a.scalar == b.scalar);
  CHECK(sqrt_error(parse_measure("d(4) + d(8)"), SqrtOptions{3, kMaxRefinement}) ==
        ErrorCode::NoLatticeSqrt);
}

TEST_CASE("squares of sampled charges round trip exactly") {
  oracle::Sampler rng(424242);
  int positive_roots = 0;
  for (int i = 0; i < 1000; ++i) {
    AtomicCharge xi = rng.charge(6, 6, false, false);
    Rational lead = xi.terms().begin()->second;
    AtomicCharge monic = scale(xi, 1 / lead);
    AtomicCharge mu = convolve(xi, xi);
    SqrtCertificate cert = charge_sqrt(mu);
    CHECK(cert.root == monic);
    CHECK(cert.scalar == Rational(lead * lead));
    CHECK(cert.positive_root_exists() == is_positive(monic));
    if (cert.positive_root_exists()) ++positive_roots;

    auto witness = positive_sqrt(mu);
    CHECK(witness.has_value() == (is_positive(monic) &&
                                  exact_sqrt(cert.scalar).has_value()));
    if (witness) CHECK(convolve(*witness, *witness) == mu);
  }
  CHECK(positive_roots > 0);
  CHECK(positive_roots < 1000);
}

TEST_CASE("roots agree with the dense array recursion") {
  oracle::Sampler rng(515151);
  for (int i = 0; i < 200; ++i) {
    AtomicCharge xi = rng.charge(5, 5, false, false);
    AtomicCharge mu = convolve(xi, xi);
    SqrtCertificate cert = charge_sqrt(mu);

    std::int64_t k0 = mu.min_key();
    std::vector<Rational> dense(mu.max_key() - k0 + 1, Rational(0));
    for (const auto& [k, c] : mu.terms()) dense[k - k0] = c / cert.scalar;
    auto h = oracle::dense_sqrt(dense);
    REQUIRE(h.has_value());
    AtomicCharge::TermMap terms;
    for (std::size_t j = 0; j < h->size(); ++j)
      if ((*h)[j] != 0) terms[k0 / 2 + static_cast<std::int64_t>(j)] = (*h)[j];
    CHECK(cert.root == AtomicCharge::make(LatticeBase{mu.lambda(), 0}, 0,
                                          std::move(terms)));
  }
}

TEST_CASE("pair_fibers enumerates index pairs by exponent sum") {
  AtomicCharge nu = parse_measure("d(2) + d(4) + d(8)");
  using Pairs = std::vector<std::pair<int, int>>;
  CHECK(pair_fibers(nu, 4) == Pairs{{0, 2}, {1, 1}, {2, 0}});
  CHECK(pair_fibers(nu, 2) == Pairs{{0, 0}});
  CHECK(pair_fibers(nu, 7).empty());
  CHECK(fiber_cardinality(nu, 4) == 3);
  CHECK(fiber_cardinality(nu, 5) == 2);
  CHECK(fiber_cardinality(nu, 11) == 0);
}

TEST_CASE("aluthge_root matches the convolved root when one exists") {
  AtomicCharge xi = parse_measure("d(2)+d(4)-1/5*d(8)+d(16)+d(32)");
  AtomicCharge mu = convolve(xi, xi);
  SqrtCertificate cert = aluthge_root(mu);
  CHECK(cert.scalar == 4);
  CHECK(cert.sign_verdict == SignVerdict::AllPositive);
  AtomicCharge expected = scale(convolve(xi, scale_by_t(xi)), Rational(1, 2));
  CHECK(cert.root == expected);

  // Root of mu on the halved grid: the internal cross-check is skipped
  // because t(xi) leaves the lattice, but the certificate is still exact.
  SqrtCertificate single = aluthge_root(parse_measure("d(2)"));
  CHECK(single.root == parse_measure("d(2)"));
  CHECK(single.scalar == 2);

  CHECK_THROWS_AS(aluthge_root(parse_measure("d(4) + d(8)")), DomainError);
}

TEST_CASE("aluthge_root on sampled squares") {
  oracle::Sampler rng(606060);
  for (int i = 0; i < 200; ++i) {
    AtomicCharge xi = rng.charge(4, 5, false, false);
    AtomicCharge mu = convolve(xi, xi);
    SqrtCertificate cert = aluthge_root(mu);
    AtomicCharge nu = convolve(xi, scale_by_t(xi));
    Rational lead = nu.terms().begin()->second;
    CHECK(cert.root == scale(nu, 1 / lead));
    CHECK(cert.scalar == Rational(lead * lead));
    CHECK(convolve(mu, scale_by_t(mu)) ==
          scale(convolve(cert.root, cert.root), cert.scalar));
  }
}
