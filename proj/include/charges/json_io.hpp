#pragma once

#include <json.hpp>

#include "charges/charge.hpp"
#include "charges/error.hpp"
#include "charges/families.hpp"
#include "charges/shifts.hpp"
#include "charges/sqrt.hpp"
#include "charges/suites.hpp"

namespace charges {

using Json = nlohmann::json;

// {"lambda":"2","refinement":0,"mass0":"0","terms":[["2","1"],["3","2"]]}
// Terms are [exponent, coefficient] pairs with exponents as exact rationals
// (k / 2^refinement) in ascending order.
Json charge_to_json(const AtomicCharge& mu);
AtomicCharge charge_from_json(const Json& j);

Json certificate_to_json(const SqrtCertificate& cert);
SqrtCertificate certificate_from_json(const Json& j);

Json diagram_report_to_json(const DiagramReport& report);

Json family_instance_to_json(const FamilyInstance& instance);

Json suite_report_to_json(const SuiteReport& report);

Json recovery_result_to_json(const RecoveryResult& result);

Json hankel_diagnostics_to_json(const HankelDiagnostics& diag);

Json error_to_json(const DomainError& error);

}  // namespace charges
