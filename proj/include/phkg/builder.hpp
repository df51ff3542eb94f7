#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "phkg/rdf/graph.hpp"
#include "phkg/tss.hpp"

namespace phkg {

enum class DiabetesStatus { None, Diabetes, PreDiabetes };

std::string diabetes_status_name(DiabetesStatus s);  // "none", "diabetes", "prediabetes"
DiabetesStatus parse_diabetes_status(const std::string& s);

struct UserProfile {
  std::string user_id = "user";
  DiabetesStatus diabetes_status = DiabetesStatus::None;
  bool fixed_insulin_dosage = false;
  std::vector<std::string> likes;      // tags, e.g. "spicy"
  std::vector<std::string> dislikes;   // food names
  std::vector<std::string> allergies;  // allergen names

  /// Lowercases, trims, sorts and deduplicates the string lists. Throws
  /// ValidationError for an empty entry or a user id that is not IRI-safe.
  void normalize();

  static UserProfile from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;
};

/// `https://w3id.org/pho-example/user/<id>`. Throws ValidationError unless
/// the id is non-empty and made of [A-Za-z0-9_-].
rdf::Term user_iri(const std::string& user_id);

using Pattern = std::variant<tss::ConsistencyPattern, tss::DietLabelFrequency, tss::CombinedGoal>;

/// Deterministic node IRI for a mined pattern.
rdf::Term pattern_node(const Pattern& pattern, const rdf::Term& user);

rdf::Term nutrient_term(Nutrient n);
rdf::Term label_term(tss::DietLabel l);
rdf::Term granularity_term(const tss::Granularity& g);

/// xsd:float literal: the value rounded to single precision, written in
/// shortest round-trip form.
rdf::Term float_literal(double value);
/// xsd:dateTime at midnight of `date`, `-00:00` offset.
rdf::Term midnight_literal(Date date);

std::vector<rdf::Triple> emit_pattern_triples(const Pattern& pattern, const rdf::Term& user);
std::vector<rdf::Triple> emit_profile_triples(const UserProfile& profile);

/// Graph of the profile plus every pattern, with the standard prefix map.
rdf::Graph build_phkg(const tss::PatternSet& patterns, const UserProfile& profile);

}  // namespace phkg
