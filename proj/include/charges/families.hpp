#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charges/charge.hpp"

namespace charges {

// Parameterized five-atom root families nu = b1*d(L) + b2*d(L^2) + b3*d(L^3)
// + b4*d(L^4) + b5*d(L^5), L = lambda:
//   Ex51: b = (1, 1, -x, 1, 1)          parameter x
//   Ex52: b = (1, a, -1, a, b)          parameters alpha, beta
//   Ex61: b = (b1, b2, -1, b4, b5)      parameters b1, b2, b4, b5
enum class Family { Ex51, Ex52, Ex61 };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct FamilyParams {
  Rational lambda = 2;
  std::map<std::string, Rational> values;
};

// Closed-form positivity test for nu * t(nu). The two ratios are defined
// whenever the sign shape b1,b2,b4,b5 > 0 > b3 holds (applicable); when
// additionally b1*b4 + b2*b3 >= 0 and b2*b5 + b3*b4 >= 0 (decisive), the
// inequality lambda/(1+lambda^2) >= max(-b1*b3/b2^2, -b3*b5/b4^2) holds
// exactly when nu * t(nu) >= 0. Outside the decisive regime `satisfied` is
// still computed but only a one-sided indicator.
struct PositivityBound {
  bool applicable = false;       // sign shape holds, lhs/rhs computed
  bool decisive = false;         // equivalence with positivity is provable
  Rational lhs = 0;              // lambda / (1 + lambda^2)
  Rational rhs = 0;              // max of the two coefficient ratios
  bool satisfied = false;        // lhs >= rhs (meaningful when applicable)
};

PositivityBound positivity_bound(const Rational& lambda,
                                 const std::vector<Rational>& b);

struct FamilyInstance {
  Family family = Family::Ex51;
  FamilyParams params;
  std::vector<Rational> b;       // (b1..b5)
  AtomicCharge nu;
  AtomicCharge mu;               // nu * nu
  AtomicCharge nu_t_nu;          // nu * t(nu)
  int p = 0;                     // atom count of mu
  bool mu_positive = false;
  bool nu_t_nu_positive = false;
  bool mu_positive_sqrt = false;       // mu = rho * rho with rho >= 0
  bool mu_tmu_positive_sqrt = false;   // mu * t(mu) = xi * xi with xi >= 0
  // mu has no positive root but mu * t(mu) does.
  bool counterexample = false;
  // Closed-form inequality data for nu * t(nu) (see PositivityBound).
  PositivityBound bound;
  // Family-specific closed-form region test agreed with the computed data.
  std::optional<bool> region_consistent;
  // Atom-count rule: with the products B1 = b1*b4 + b2*b3 and
  // B2 = b2*b5 + b3*b4, p = 9 - [B1 == 0] - [B2 == 0]. Checked when b3 < 0
  // and both mu and nu * t(nu) are positive.
  std::optional<bool> p_rule_consistent;
  // positivity_bound agreement with the computed sign of nu * t(nu).
  std::optional<bool> bound_consistent;
};

// Builds the family instance. Required parameter keys: Ex51 "x";
// Ex52 "alpha", "beta"; Ex61 "b1", "b2", "b4", "b5". Throws
// InvalidParameters on missing/extra keys or lambda <= 1.
FamilyInstance family_instance(Family f, const FamilyParams& params);

// Evaluates the family at each lambda and keeps the confirmed
// counterexamples.
std::vector<FamilyInstance> scan_family(Family f,
                                        const std::vector<Rational>& lambdas,
                                        const FamilyParams& params);

}  // namespace charges
