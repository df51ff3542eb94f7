#pragma once

// JSON renderings of stage outputs. Every CLI stage writes one of these
// next to its Turtle so downstream tools never have to parse RDF.

#include <nlohmann/json.hpp>

#include "phkg/reasoner.hpp"
#include "phkg/tss.hpp"

namespace phkg::report {

using nlohmann::json;

json patterns_json(const tss::PatternSet& patterns);

json payload_json(const guidelines::ConstraintPayload& payload);

/// {"diabetes_status", "likes", "dislikes", "allergies",
///  "constraints": [{"rule", "payload"}]}
json constraints_json(const reasoner::ConstraintSet& cs);
/// Inverse of constraints_json; payloads are re-validated.
reasoner::ConstraintSet constraints_from_json(const json& doc);

json verdict_json(const reasoner::ComplianceVerdict& v);
json directive_json(const reasoner::Directive& d);

/// {"user", "window_start", "verdicts", "directives", "constraints",
///  "question"}
json reason_report(const reasoner::Classification& result, const reasoner::ConstraintSet& cs,
                   const std::string& augmented_question);

}  // namespace phkg::report
