#include "charges/families.hpp"

#include <algorithm>

#include "charges/sqrt.hpp"

namespace charges {

const char* family_name(Family f) {
  switch (f) {
    case Family::Ex51: return "ex51";
    case Family::Ex52: return "ex52";
    case Family::Ex61: return "ex61";
  }
  return "ex51";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "ex51") return Family::Ex51;
  if (name == "ex52") return Family::Ex52;
  if (name == "ex61") return Family::Ex61;
  return std::nullopt;
}

PositivityBound positivity_bound(const Rational& lambda,
                                 const std::vector<Rational>& given) {
  PositivityBound out;
  if (given.size() != 5) return out;
  std::vector<Rational> b = given;
  for (auto& c : b) c.canonicalize();
  if (!(b[0] > 0 && b[1] > 0 && b[2] < 0 && b[3] > 0 && b[4] > 0)) return out;
  Rational l = lambda;
  l.canonicalize();
  out.applicable = true;
  out.decisive = b[0] * b[3] + b[1] * b[2] >= 0 &&
                 b[1] * b[4] + b[2] * b[3] >= 0;
  out.lhs = l / (1 + l * l);
  out.rhs = std::max(Rational(-(b[0] * b[2]) / (b[1] * b[1])),
                     Rational(-(b[2] * b[4]) / (b[3] * b[3])));
  out.satisfied = out.lhs >= out.rhs;
  return out;
}

namespace {

Rational required_param(const FamilyParams& params, const char* key) {
  auto it = params.values.find(key);
  if (it == params.values.end())
    throw DomainError(ErrorCode::InvalidParameters,
                      std::string("missing family parameter '") + key + "'");
  if (it->second <= 0)
    throw DomainError(ErrorCode::InvalidParameters,
                      std::string("family parameter '") + key +
                          "' must be positive, got " + to_string(it->second));
  return it->second;
}

// All five coefficients share one sign; then +/- nu is a positive measure.
bool uniformly_signed(const AtomicCharge& nu) {
  auto signs = sign_pattern(nu);
  for (int s : signs)
    if (s != signs.front()) return false;
  return true;
}

std::vector<Rational> family_coefficients(Family f, const FamilyParams& params) {
  switch (f) {
    case Family::Ex51: {
      Rational x = required_param(params, "x");
      return {1, 1, -x, 1, 1};
    }
    case Family::Ex52: {
      Rational alpha = required_param(params, "alpha");
      Rational beta = required_param(params, "beta");
      return {1, alpha, -1, alpha, beta};
    }
    case Family::Ex61: {
      return {required_param(params, "b1"), required_param(params, "b2"),
              Rational(-1), required_param(params, "b4"),
              required_param(params, "b5")};
    }
  }
  throw DomainError(ErrorCode::InvalidParameters, "unknown family");
}

std::size_t expected_param_count(Family f) {
  switch (f) {
    case Family::Ex51: return 1;
    case Family::Ex52: return 2;
    case Family::Ex61: return 4;
  }
  return 0;
}

}  // namespace

FamilyInstance family_instance(Family f, const FamilyParams& given) {
  FamilyParams params = given;
  params.lambda.canonicalize();
  for (auto& [key, value] : params.values) value.canonicalize();
  if (params.lambda <= 1)
    throw DomainError(ErrorCode::InvalidParameters,
                      "family lambda must exceed 1, got " +
                          to_string(params.lambda));
  if (params.values.size() != expected_param_count(f))
    throw DomainError(ErrorCode::InvalidParameters,
                      std::string("family ") + family_name(f) + " takes exactly " +
                          std::to_string(expected_param_count(f)) +
                          " parameter(s)");
  FamilyInstance out;
  out.family = f;
  out.params = params;
  out.b = family_coefficients(f, params);

  AtomicCharge::TermMap terms;
  for (int i = 0; i < 5; ++i)
    if (out.b[i] != 0) terms[i + 1] = out.b[i];
  out.nu = AtomicCharge::make(LatticeBase{params.lambda, 0}, 0, std::move(terms));
  out.mu = convolve(out.nu, out.nu);
  out.nu_t_nu = convolve(out.nu, scale_by_t(out.nu));
  out.p = out.mu.atom_count();
  out.mu_positive = is_positive(out.mu);
  out.nu_t_nu_positive = is_positive(out.nu_t_nu);

  // mu = nu * nu and mu * t(mu) = (nu * t(nu)) * (nu * t(nu)), and square
  // roots are unique up to sign, so positive roots exist exactly when the
  // respective root is uniformly signed.
  out.mu_positive_sqrt = uniformly_signed(out.nu);
  out.mu_tmu_positive_sqrt = uniformly_signed(out.nu_t_nu);
  out.counterexample = !out.mu_positive_sqrt && out.mu_tmu_positive_sqrt;

  switch (f) {
    case Family::Ex51: {
      Rational x = out.params.values.at("x");
      bool region = x > 0 && x < Rational(1, 2);
      out.region_consistent = region == (out.mu_positive && out.p == 9);
      break;
    }
    case Family::Ex52: {
      Rational alpha = out.params.values.at("alpha");
      Rational beta = out.params.values.at("beta");
      bool region = alpha * alpha >= 2 * beta && beta >= 1;
      out.region_consistent = region == out.mu_positive;
      break;
    }
    case Family::Ex61:
      break;
  }

  if (out.b[2] < 0 && out.mu_positive && out.nu_t_nu_positive) {
    Rational prod1 = out.b[0] * out.b[3] + out.b[1] * out.b[2];
    Rational prod2 = out.b[1] * out.b[4] + out.b[2] * out.b[3];
    int predicted = 9 - (prod1 == 0 ? 1 : 0) - (prod2 == 0 ? 1 : 0);
    out.p_rule_consistent = out.p == predicted;
  }

  out.bound = positivity_bound(params.lambda, out.b);
  if (out.bound.decisive)
    out.bound_consistent = out.bound.satisfied == out.nu_t_nu_positive;

  return out;
}

std::vector<FamilyInstance> scan_family(Family f,
                                        const std::vector<Rational>& lambdas,
                                        const FamilyParams& params) {
  std::vector<FamilyInstance> confirmed;
  for (const Rational& lambda : lambdas) {
    FamilyParams p = params;
    p.lambda = lambda;
    FamilyInstance instance = family_instance(f, p);
    if (instance.counterexample) confirmed.push_back(std::move(instance));
  }
  return confirmed;
}

}  // namespace charges
