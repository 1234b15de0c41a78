#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "charges/charge.hpp"
#include "charges/sqrt.hpp"

namespace charges {

// Squared weights alpha_n^2 of a unilateral weighted shift.
struct WeightSequence {
  std::vector<Rational> squared;
};

// alpha_n^2 = gamma_{n+1} / gamma_n. Requires every gamma_n > 0
// (NonPositiveMoments otherwise) and at least two entries.
WeightSequence moments_to_squared_weights(const std::vector<Rational>& gammas);

// Moments gamma_n = gamma_0 * alpha_0^2 ... alpha_{n-1}^2 with gamma_0 = 1.
std::vector<Rational> squared_weights_to_moments(const WeightSequence& weights,
                                                 int n_max);

// Aluthge-transformed weights alpha~_n = sqrt(alpha_n * alpha_{n+1}). Only
// alpha~_n^4 = alpha_n^2 * alpha_{n+1}^2 is rational in general; the squared
// weight is materialized exactly when that product is a perfect square.
struct AluthgeWeights {
  std::vector<Rational> fourth;                   // alpha~_n^4, exact
  std::vector<std::optional<Rational>> squared;   // alpha~_n^2 when exact
  bool all_squared_exact = false;
};

AluthgeWeights aluthge_squared_weights(const WeightSequence& weights);

// Squares of the Aluthge shift moments: gamma~_n^2 = alpha~_0^4...alpha~_{n-1}^4
// with gamma~_0 = 1. Always rational, and satisfies
// gamma~_n^2 * alpha_0^2 == gamma_n * gamma_{n+1} exactly.
std::vector<Rational> aluthge_moments_squared(const WeightSequence& weights,
                                              int n_max);

// Moment-sequence recovery of a finitely atomic representing charge
// (Prony / Hankel method, everything in exact rational arithmetic except
// the numeric root localization, whose suggestions are verified exactly).
struct RecoveredMeasure {
  std::vector<Atom> atoms;            // (value, density), values ascending
  std::optional<AtomicCharge> charge; // set when the atoms sit on a lattice
  // Subnormality of the recursively generated shift: densities all > 0 and
  // atom values all >= 0. When subnormal, the largest atom equals the shift
  // norm squared and dominates every ratio gamma_{n+1}/gamma_n of the input.
  bool subnormal = false;
  Rational norm_squared = 0;          // max atom value
  int recurrence_order = 0;
};

// Minimal linear recurrence found, but some characteristic root is not
// rational (or not real). The recurrence maps gamma_{n+d} =
// sum_i coefficients[i] * gamma_{n+i}; roots are numeric approximations,
// given as (re, im) pairs.
struct IrrationalAtomReport {
  std::vector<Rational> recurrence;   // c_0..c_{d-1}
  std::vector<std::pair<double, double>> numeric_roots;
  std::string message;
};

// No minimal recurrence of order <= floor((N+1)/2) fits the sequence.
struct RecurrenceFailure {
  int max_order_tried = 0;
  std::string message;
};

using RecoveryResult =
    std::variant<RecoveredMeasure, IrrationalAtomReport, RecurrenceFailure>;

RecoveryResult berger_recover(const std::vector<Rational>& gammas);

// Recovery from gamma_0 = 1 and the full run of squared weights.
RecoveryResult berger_recover(const WeightSequence& weights);

// Numeric positive-semidefiniteness diagnostic for the two moment Hankel
// matrices H0 = [gamma_{i+j}] and H1 = [gamma_{i+j+1}]. Eigenvalues are
// computed on the diagonally balanced matrix H_ij / sqrt(H_ii * H_jj)
// (unit diagonal), which makes the fixed threshold meaningful across
// wildly scaled moment sequences.
struct HankelDiagnostics {
  std::vector<double> min_eigenvalue_h0;  // per order 1..max_order
  std::vector<double> min_eigenvalue_h1;
  bool numerically_psd = false;           // all eigenvalues > -1e-8
};

HankelDiagnostics hankel_psd_check(const std::vector<Rational>& gammas,
                                   int max_order = 12);

// Exact positive-semidefiniteness of the same Hankel matrices via rational
// Gaussian elimination; the numeric diagnostic must agree with this.
bool hankel_exactly_psd(const std::vector<Rational>& gammas, int max_order = 12);

enum class Verdict { False, True, Undecided };

const char* verdict_name(Verdict v);

// Subnormality certificates for the three shifts attached to mu: W_alpha
// (mu positive), the square-root shift W_sqrt(alpha) (mu = nu * nu with
// nu >= 0) and the Aluthge transform (mu * t(mu) = xi * xi with xi >= 0).
// A NoLatticeSqrt outcome yields Undecided, never False. The mass at zero
// is stripped before the square-root columns (it does not affect them) and
// reported. For a charge mu the square-root column is not applicable; the
// verdict stays False.
struct DiagramReport {
  Verdict w_alpha = Verdict::False;
  Verdict sqrt_shift = Verdict::False;
  Verdict aluthge = Verdict::False;
  bool sqrt_shift_applicable = true;
  Rational mass0_stripped = 0;
  std::optional<SqrtCertificate> sqrt_shift_certificate;
  std::optional<SqrtCertificate> aluthge_certificate;
  // Violations of sqrt_shift => w_alpha and sqrt_shift => aluthge among the
  // decided columns; provably empty.
  std::vector<std::string> implication_violations;
};

DiagramReport certify_diagram(const AtomicCharge& mu,
                              const SqrtOptions& options = {});

}  // namespace charges
