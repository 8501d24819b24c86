#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "triplekit/audit.hpp"
#include "triplekit/extension.hpp"
#include "triplekit/preservers.hpp"
#include "triplekit/transition.hpp"

namespace triplekit {

// All emitted documents use ordered_json so field order, and therefore the
// serialized bytes, are stable across runs.
using ordered_json = nlohmann::ordered_json;

// Strict schema guard: every name in `required` must be present and no key
// outside required + optional may appear. Violations raise SchemaError.
void require_keys(const ordered_json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional = {});

ordered_json complex_to_json(cplx z);

// Raw matrices serialize as {"re": [[...]], "im": [[...]]}; real matrices as
// a plain array of rows.
ordered_json matrix_to_json(const cmat& m);
ordered_json real_matrix_to_json(const rmat& m);

ordered_json factor_to_json(const FactorDescriptor& f);
FactorDescriptor factor_from_json(const ordered_json& j);

// Elements carry the factor plus re/im entry arrays in row-major ambient
// shape; spin elements serialize as a single row.
ordered_json element_to_json(const Element& x);
Element element_from_json(const ordered_json& j);

// Tripotents add "validated": true and re-validate on the way in.
ordered_json tripotent_to_json(const Tripotent& e);
Tripotent tripotent_from_json(const ordered_json& j, const ToleranceConfig& tol = {});

// Accepts either an element payload or a tripotent payload (detected by the
// "validated" key) and validates the result as a tripotent.
Tripotent flexible_tripotent_from_json(const ordered_json& j, const ToleranceConfig& tol = {});

ordered_json operator_to_json(const LinearOperator& op);
LinearOperator operator_from_json(const ordered_json& j);

ordered_json tolerances_to_json(const ToleranceConfig& tol);

ordered_json axiom_report_to_json(const AxiomReport& r);
ordered_json welldefined_report_to_json(const WellDefinedReport& r);
ordered_json ttp_report_to_json(const TtpReport& r);
ordered_json orthogonality_report_to_json(const OrthogonalityReport& r);
ordered_json isomorphism_report_to_json(const IsomorphismReport& r);
ordered_json scale_recovery_to_json(const ScaleRecovery& r);
ordered_json peirce_to_json(const PeirceDecomposition& pd);
ordered_json decomposition_to_json(const std::vector<WeightedTripotent>& parts);
ordered_json factorization_to_json(const RankOneFactorization& f);
ordered_json classification_to_json(const AutomorphismClassification& c);
ordered_json sphere_extension_to_json(const SphereExtension& s);

}  // namespace triplekit
