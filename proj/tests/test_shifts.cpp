#include <doctest.h>

#include <algorithm>

#include "charges/expr.hpp"
#include "charges/shifts.hpp"
#include "oracle.hpp"

using namespace charges;

namespace {

const std::vector<Rational> kTwoAtomMoments{
    1, Rational(3, 2), Rational(5, 2), Rational(9, 2), Rational(17, 2),
    Rational(33, 2)};

std::vector<std::pair<Rational, Rational>> sorted_atoms(const AtomicCharge& mu) {
  std::vector<std::pair<Rational, Rational>> out;
  if (mu.mass_at_zero() != 0) out.emplace_back(0, mu.mass_at_zero());
  for (const auto& [k, c] : mu.terms()) out.emplace_back(mu.value_of(k), c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("moments_to_squared_weights") {
  std::vector<Rational> gammas{1, Rational(1, 2), Rational(1, 3), Rational(1, 4)};
  WeightSequence w = moments_to_squared_weights(gammas);
  CHECK(w.squared == std::vector<Rational>{Rational(1, 2), Rational(2, 3),
                                           Rational(3, 4)});

  CHECK_THROWS_AS(moments_to_squared_weights({1}), DomainError);
  try {
    moments_to_squared_weights({1, 0, 1});
  } catch (const DomainError& e) {
    CHECK(e.code() == ErrorCode::NonPositiveMoments);
  }
  CHECK_THROWS_AS(moments_to_squared_weights({1, -2}), DomainError);
}

TEST_CASE("squared_weights_to_moments inverts the weight map") {
  WeightSequence w = moments_to_squared_weights(kTwoAtomMoments);
  CHECK(w.squared == std::vector<Rational>{Rational(3, 2), Rational(5, 3),
                                           Rational(9, 5), Rational(17, 9),
                                           Rational(33, 17)});
  CHECK(squared_weights_to_moments(w, 5) == kTwoAtomMoments);
  CHECK_THROWS_AS(squared_weights_to_moments(w, 6), DomainError);
  CHECK(squared_weights_to_moments(w, 0) == std::vector<Rational>{1});
}

TEST_CASE("aluthge_squared_weights materializes exact square roots") {
  AluthgeWeights aw = aluthge_squared_weights(WeightSequence{{4, 9, Rational(1, 4)}});
  CHECK(aw.fourth == std::vector<Rational>{36, Rational(9, 4)});
  REQUIRE(aw.squared.size() == 2);
  CHECK(aw.squared[0] == Rational(6));
  CHECK(aw.squared[1] == Rational(3, 2));
  CHECK(aw.all_squared_exact);

  AluthgeWeights inexact = aluthge_squared_weights(
      WeightSequence{{Rational(1, 2), Rational(2, 3), Rational(3, 4)}});
  CHECK(inexact.fourth == std::vector<Rational>{Rational(1, 3), Rational(1, 2)});
  CHECK_FALSE(inexact.squared[0].has_value());
  CHECK_FALSE(inexact.all_squared_exact);
}

TEST_CASE("aluthge moment squares satisfy the cross identity") {
  oracle::Sampler rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    WeightSequence w;
    int len = static_cast<int>(rng.uniform(2, 8));
    for (int i = 0; i < len; ++i) w.squared.push_back(rng.coefficient(true));
    int n_max = len - 1;
    std::vector<Rational> tilde = aluthge_moments_squared(w, n_max);
    std::vector<Rational> gammas = squared_weights_to_moments(w, n_max + 1);
    for (int n = 0; n <= n_max; ++n)
      CHECK(Rational(tilde[n] * w.squared[0]) ==
            Rational(gammas[n] * gammas[n + 1]));
  }
}

TEST_CASE("berger_recover finds the two-atom measure") {
  RecoveryResult result = berger_recover(kTwoAtomMoments);
  REQUIRE(std::holds_alternative<RecoveredMeasure>(result));
  const auto& m = std::get<RecoveredMeasure>(result);
  REQUIRE(m.atoms.size() == 2);
  CHECK(m.atoms[0].value == 1);
  CHECK(m.atoms[0].coefficient == Rational(1, 2));
  CHECK(m.atoms[1].value == 2);
  CHECK(m.atoms[1].coefficient == Rational(1, 2));
  CHECK(m.subnormal);
  CHECK(m.norm_squared == 2);
  CHECK(m.recurrence_order == 2);
  REQUIRE(m.charge.has_value());
  CHECK(*m.charge == parse_measure("1/2 d(1) + 1/2 d(2)"));

  WeightSequence w = moments_to_squared_weights(kTwoAtomMoments);
  RecoveryResult via_weights = berger_recover(w);
  REQUIRE(std::holds_alternative<RecoveredMeasure>(via_weights));
  CHECK(std::get<RecoveredMeasure>(via_weights).atoms.size() == 2);
}

TEST_CASE("berger_recover reports irrational characteristic roots") {
  RecoveryResult result = berger_recover({1, 1, 2, 3, 5, 8, 13});
  REQUIRE(std::holds_alternative<IrrationalAtomReport>(result));
  const auto& report = std::get<IrrationalAtomReport>(result);
  CHECK(report.recurrence == std::vector<Rational>{1, 1});
  REQUIRE(report.numeric_roots.size() == 2);
  CHECK(report.numeric_roots[0].first == doctest::Approx(1.6180339887));
  CHECK(report.numeric_roots[0].second == doctest::Approx(0.0));
  CHECK(report.numeric_roots[1].first == doctest::Approx(-0.6180339887));
  CHECK(report.message == "characteristic root is not rational");
}

TEST_CASE("berger_recover reports recurrence failure") {
  RecoveryResult result = berger_recover({1, 2, 4, 9});
  REQUIRE(std::holds_alternative<RecurrenceFailure>(result));
  const auto& failure = std::get<RecurrenceFailure>(result);
  CHECK(failure.max_order_tried == 2);
  CHECK(failure.message ==
        "no linear recurrence of order <= 2 fits the moments");
}

TEST_CASE("berger_recover handles the atom at zero") {
  RecoveryResult result = berger_recover({1, 0, 0, 0});
  REQUIRE(std::holds_alternative<RecoveredMeasure>(result));
  const auto& m = std::get<RecoveredMeasure>(result);
  REQUIRE(m.atoms.size() == 1);
  CHECK(m.atoms[0].value == 0);
  CHECK(m.atoms[0].coefficient == 1);
  CHECK(m.subnormal);
  CHECK(m.norm_squared == 0);
  REQUIRE(m.charge.has_value());
  CHECK(m.charge->mass_at_zero() == 1);
  CHECK(m.charge->lattice_empty());
}

TEST_CASE("berger_recover flags signed densities as not subnormal") {
  // 2 d(1) - d(2): gamma_n = 2 - 2^n.
  RecoveryResult result = berger_recover({1, 0, -2, -6, -14});
  REQUIRE(std::holds_alternative<RecoveredMeasure>(result));
  const auto& m = std::get<RecoveredMeasure>(result);
  REQUIRE(m.atoms.size() == 2);
  CHECK(m.atoms[1].coefficient == -1);
  CHECK_FALSE(m.subnormal);
  CHECK(m.norm_squared == 2);
}

TEST_CASE("berger_recover round trips sampled charges") {
  oracle::Sampler rng(888);
  for (int trial = 0; trial < 300; ++trial) {
    AtomicCharge mu = rng.charge(4, 5, trial % 2 == 0, true);
    int d = mu.atom_count() + (mu.mass_at_zero() != 0 ? 1 : 0);
    RecoveryResult result = berger_recover(moments(mu, 2 * d + 2));
    REQUIRE(std::holds_alternative<RecoveredMeasure>(result));
    const auto& m = std::get<RecoveredMeasure>(result);
    std::vector<std::pair<Rational, Rational>> got;
    for (const auto& atom : m.atoms) got.emplace_back(atom.value, atom.coefficient);
    CHECK(got == sorted_atoms(mu));
    CHECK(m.subnormal == is_positive(mu));
    CHECK(m.recurrence_order == d);
    REQUIRE(m.charge.has_value());
    CHECK(*m.charge == mu);
  }
}

TEST_CASE("hankel diagnostics agree between numeric and exact paths") {
  HankelDiagnostics diag = hankel_psd_check(kTwoAtomMoments);
  CHECK(diag.numerically_psd);
  CHECK(diag.min_eigenvalue_h0.size() == 3);
  CHECK(diag.min_eigenvalue_h1.size() == 3);
  for (double e : diag.min_eigenvalue_h0) CHECK(e > -1e-8);
  CHECK(hankel_exactly_psd(kTwoAtomMoments));

  std::vector<Rational> signed_moments{1, 0, -1};
  CHECK_FALSE(hankel_psd_check(signed_moments).numerically_psd);
  CHECK_FALSE(hankel_exactly_psd(signed_moments));

  // Zero pivot with nonzero off-diagonal entries refutes positivity.
  std::vector<Rational> zero_pivot{0, 1, 0};
  CHECK_FALSE(hankel_exactly_psd(zero_pivot));
  CHECK_FALSE(hankel_psd_check(zero_pivot).numerically_psd);
}

TEST_CASE("hankel positivity on sampled charges") {
  oracle::Sampler rng(909);
  for (int trial = 0; trial < 200; ++trial) {
    bool positive = trial % 2 == 0;
    AtomicCharge mu = rng.charge(3, 4, positive, positive);
    std::vector<Rational> gammas = moments(mu, 24);
    bool exact = hankel_exactly_psd(gammas);
    CHECK(hankel_psd_check(gammas).numerically_psd == exact);
    if (is_positive(mu)) CHECK(exact);
  }
}

TEST_CASE("certify_diagram on the nine-atom square") {
  AtomicCharge xi = parse_measure("d(2)+d(4)-1/5*d(8)+d(16)+d(32)");
  AtomicCharge mu = convolve(xi, xi);
  DiagramReport report = certify_diagram(mu);
  CHECK(report.w_alpha == Verdict::True);
  CHECK(report.sqrt_shift == Verdict::False);
  CHECK(report.aluthge == Verdict::True);
  CHECK(report.sqrt_shift_applicable);
  CHECK(report.mass0_stripped == 0);
  CHECK(report.implication_violations.empty());

  REQUIRE(report.sqrt_shift_certificate.has_value());
  CHECK(report.sqrt_shift_certificate->root == xi);
  CHECK(report.sqrt_shift_certificate->sign_verdict == SignVerdict::MixedSign);

  REQUIRE(report.aluthge_certificate.has_value());
  CHECK(report.aluthge_certificate->scalar == 4);
  CHECK(report.aluthge_certificate->root ==
        scale(convolve(xi, scale_by_t(xi)), Rational(1, 2)));
}

TEST_CASE("certify_diagram undecided columns") {
  DiagramReport report = certify_diagram(parse_measure("d(4) + d(8)"));
  CHECK(report.w_alpha == Verdict::True);
  CHECK(report.sqrt_shift == Verdict::Undecided);
  CHECK(report.aluthge == Verdict::Undecided);
  CHECK(report.sqrt_shift_applicable);
  CHECK_FALSE(report.sqrt_shift_certificate.has_value());
  CHECK(report.implication_violations.empty());

  // Forbidding any refinement turns both root searches into Undecided.
  DiagramReport capped =
      certify_diagram(parse_measure("d(4) + 2 d(8) + d(16)"), SqrtOptions{0, 0});
  CHECK(capped.w_alpha == Verdict::True);
  CHECK(capped.sqrt_shift == Verdict::Undecided);
  CHECK(capped.aluthge == Verdict::Undecided);
}

TEST_CASE("certify_diagram strips and reports the mass at zero") {
  AtomicCharge core = parse_measure("d(4) + 2 d(8) + d(16)");
  DiagramReport plain = certify_diagram(core);
  CHECK(plain.w_alpha == Verdict::True);
  CHECK(plain.sqrt_shift == Verdict::True);
  CHECK(plain.aluthge == Verdict::True);

  DiagramReport with_mass = certify_diagram(parse_measure("3 d(0) + d(4) + 2 d(8) + d(16)"));
  CHECK(with_mass.mass0_stripped == 3);
  CHECK(with_mass.w_alpha == plain.w_alpha);
  CHECK(with_mass.sqrt_shift == plain.sqrt_shift);
  CHECK(with_mass.aluthge == plain.aluthge);

  DiagramReport neg_mass = certify_diagram(parse_measure("-d(0) + d(4) + 2 d(8) + d(16)"));
  CHECK(neg_mass.mass0_stripped == -1);
  CHECK(neg_mass.w_alpha == Verdict::False);
  CHECK(neg_mass.sqrt_shift == Verdict::False);
  CHECK_FALSE(neg_mass.sqrt_shift_applicable);
  CHECK(neg_mass.aluthge == Verdict::True);
  CHECK(neg_mass.implication_violations.empty());
}

TEST_CASE("certify_diagram degenerate charges") {
  DiagramReport mass_only = certify_diagram(parse_measure("3 d(0)"));
  CHECK(mass_only.w_alpha == Verdict::True);
  CHECK(mass_only.sqrt_shift == Verdict::True);
  CHECK(mass_only.aluthge == Verdict::True);

  DiagramReport neg = certify_diagram(scale(parse_measure("d(0)"), -1));
  CHECK(neg.w_alpha == Verdict::False);
  CHECK(neg.sqrt_shift == Verdict::False);
  CHECK(neg.aluthge == Verdict::False);
  CHECK_FALSE(neg.sqrt_shift_applicable);
}

TEST_CASE("certify_diagram never violates the implication structure") {
  oracle::Sampler rng(2468);
  for (int trial = 0; trial < 300; ++trial) {
    try {
      AtomicCharge mu = trial % 3 == 0
                            ? convolve(rng.charge(3, 4), rng.charge(1, 2))
                            : rng.charge(4, 5, trial % 2 == 0, true);
      DiagramReport report = certify_diagram(mu);
      CHECK(report.implication_violations.empty());
      if (report.sqrt_shift == Verdict::True) {
        CHECK(report.w_alpha == Verdict::True);
        CHECK(report.aluthge == Verdict::True);
      }
    } catch (const DomainError& e) {
      CHECK(e.code() == ErrorCode::BaseMismatch);
    }
  }
}

TEST_CASE("verdict names") {
  CHECK(std::string(verdict_name(Verdict::True)) == "true");
  CHECK(std::string(verdict_name(Verdict::False)) == "false");
  CHECK(std::string(verdict_name(Verdict::Undecided)) == "undecided");
}
