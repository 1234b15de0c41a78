#include "charges/json_io.hpp"

namespace charges {

namespace {

Json rational_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const char* what) {
  if (!j.is_string())
    throw DomainError(ErrorCode::InvalidParameters,
                      std::string(what) + " must be a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DomainError(ErrorCode::InvalidParameters,
                      std::string(what) + ": " + e.what());
  }
}

Json verdict_json(Verdict v) {
  switch (v) {
    case Verdict::True: return Json(true);
    case Verdict::False: return Json(false);
    case Verdict::Undecided: return Json("undecided");
  }
  return Json("undecided");
}

Json optional_bool_json(const std::optional<bool>& b) {
  return b ? Json(*b) : Json(nullptr);
}

}  // namespace

Json charge_to_json(const AtomicCharge& mu) {
  Json terms = Json::array();
  for (const auto& [k, c] : mu.terms())
    terms.push_back(Json::array({rational_json(mu.exponent_of(k)),
                                 rational_json(c)}));
  return Json{{"lambda", rational_json(mu.lambda())},
              {"refinement", mu.refinement()},
              {"mass0", rational_json(mu.mass_at_zero())},
              {"terms", std::move(terms)}};
}

AtomicCharge charge_from_json(const Json& j) {
  if (!j.is_object())
    throw DomainError(ErrorCode::InvalidParameters, "charge must be an object");
  Rational lambda = rational_from_json(j.at("lambda"), "lambda");
  int refinement = j.value("refinement", 0);
  Rational mass0 =
      j.contains("mass0") ? rational_from_json(j.at("mass0"), "mass0") : Rational(0);
  AtomicCharge::TermMap terms;
  Integer mod = Integer(1) << refinement;
  for (const auto& entry : j.at("terms")) {
    Rational e = rational_from_json(entry.at(0), "exponent");
    Rational scaled = e * Rational(mod);
    if (scaled.get_den() != 1)
      throw DomainError(ErrorCode::InvalidParameters,
                        "exponent " + to_string(e) + " is not a multiple of 1/2^" +
                            std::to_string(refinement));
    if (!scaled.get_num().fits_slong_p())
      throw DomainError(ErrorCode::InvalidParameters, "exponent overflow");
    terms[scaled.get_num().get_si()] += rational_from_json(entry.at(1), "coefficient");
  }
  return AtomicCharge::make(LatticeBase{std::move(lambda), refinement},
                            std::move(mass0), std::move(terms));
}

Json certificate_to_json(const SqrtCertificate& cert) {
  return Json{{"root", charge_to_json(cert.root)},
              {"scalar", rational_json(cert.scalar)},
              {"sign_verdict", sign_verdict_name(cert.sign_verdict)}};
}

SqrtCertificate certificate_from_json(const Json& j) {
  SqrtCertificate cert;
  cert.root = charge_from_json(j.at("root"));
  cert.scalar = rational_from_json(j.at("scalar"), "scalar");
  std::string verdict = j.at("sign_verdict").get<std::string>();
  if (verdict == "all_positive")
    cert.sign_verdict = SignVerdict::AllPositive;
  else if (verdict == "mixed_sign")
    cert.sign_verdict = SignVerdict::MixedSign;
  else
    throw DomainError(ErrorCode::InvalidParameters,
                      "unknown sign_verdict '" + verdict + "'");
  return cert;
}

Json diagram_report_to_json(const DiagramReport& report) {
  Json witnesses{{"sqrt_shift", nullptr}, {"aluthge", nullptr}};
  if (report.sqrt_shift_certificate)
    witnesses["sqrt_shift"] = certificate_to_json(*report.sqrt_shift_certificate);
  if (report.aluthge_certificate)
    witnesses["aluthge"] = certificate_to_json(*report.aluthge_certificate);
  Json violations = Json::array();
  for (const auto& v : report.implication_violations) violations.push_back(v);
  return Json{{"w_alpha_subnormal", verdict_json(report.w_alpha)},
              {"sqrt_shift_subnormal", verdict_json(report.sqrt_shift)},
              {"aluthge_subnormal", verdict_json(report.aluthge)},
              {"sqrt_shift_applicable", report.sqrt_shift_applicable},
              {"mass0_stripped", rational_json(report.mass0_stripped)},
              {"witnesses", std::move(witnesses)},
              {"implication_violations", std::move(violations)}};
}

Json family_instance_to_json(const FamilyInstance& instance) {
  Json params = Json::object();
  for (const auto& [key, value] : instance.params.values)
    params[key] = rational_json(value);
  Json b = Json::array();
  for (const auto& coeff : instance.b) b.push_back(rational_json(coeff));
  Json bound{{"applicable", instance.bound.applicable},
             {"decisive", instance.bound.decisive},
             {"lhs", rational_json(instance.bound.lhs)},
             {"rhs", rational_json(instance.bound.rhs)},
             {"satisfied", instance.bound.satisfied}};
  return Json{{"family", family_name(instance.family)},
              {"lambda", rational_json(instance.params.lambda)},
              {"params", std::move(params)},
              {"b", std::move(b)},
              {"nu", charge_to_json(instance.nu)},
              {"mu", charge_to_json(instance.mu)},
              {"nu_t_nu", charge_to_json(instance.nu_t_nu)},
              {"p", instance.p},
              {"mu_positive", instance.mu_positive},
              {"nu_t_nu_positive", instance.nu_t_nu_positive},
              {"mu_positive_sqrt", instance.mu_positive_sqrt},
              {"mu_tmu_positive_sqrt", instance.mu_tmu_positive_sqrt},
              {"counterexample", instance.counterexample},
              {"positivity_bound", std::move(bound)},
              {"region_consistent", optional_bool_json(instance.region_consistent)},
              {"p_rule_consistent", optional_bool_json(instance.p_rule_consistent)},
              {"bound_consistent", optional_bool_json(instance.bound_consistent)}};
}

Json suite_report_to_json(const SuiteReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back(Json{{"trial", v.trial},
                              {"reason", v.reason},
                              {"nu", charge_to_json(v.nu)}});
  return Json{{"suite", report.suite},
              {"trials", report.trials},
              {"draws", report.draws},
              {"seed", report.seed},
              {"violations", std::move(violations)},
              {"elapsed_ms", report.elapsed_ms}};
}

Json recovery_result_to_json(const RecoveryResult& result) {
  if (const auto* m = std::get_if<RecoveredMeasure>(&result)) {
    Json atoms = Json::array();
    for (const auto& atom : m->atoms)
      atoms.push_back(Json::array(
          {rational_json(atom.value), rational_json(atom.coefficient)}));
    return Json{{"status", "recovered"},
                {"atoms", std::move(atoms)},
                {"charge", m->charge ? charge_to_json(*m->charge) : Json(nullptr)},
                {"subnormal", m->subnormal},
                {"norm_squared", rational_json(m->norm_squared)},
                {"recurrence_order", m->recurrence_order}};
  }
  if (const auto* ir = std::get_if<IrrationalAtomReport>(&result)) {
    Json recurrence = Json::array();
    for (const auto& c : ir->recurrence) recurrence.push_back(rational_json(c));
    Json roots = Json::array();
    for (const auto& [re, im] : ir->numeric_roots)
      roots.push_back(Json::array({re, im}));
    return Json{{"status", "irrational_atom"},
                {"recurrence", std::move(recurrence)},
                {"numeric_roots", std::move(roots)},
                {"message", ir->message}};
  }
  const auto& failure = std::get<RecurrenceFailure>(result);
  return Json{{"status", "recurrence_failure"},
              {"max_order_tried", failure.max_order_tried},
              {"message", failure.message}};
}

Json hankel_diagnostics_to_json(const HankelDiagnostics& diag) {
  return Json{{"min_eigenvalue_h0", diag.min_eigenvalue_h0},
              {"min_eigenvalue_h1", diag.min_eigenvalue_h1},
              {"numerically_psd", diag.numerically_psd}};
}

Json error_to_json(const DomainError& error) {
  Json payload{{"code", error.code_name()}, {"message", error.what()}};
  if (error.offset()) payload["offset"] = *error.offset();
  return Json{{"error", std::move(payload)}};
}

}  // namespace charges
