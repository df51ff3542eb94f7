#pragma once

// Namespaces and term constants for the personal health vocabulary. Every
// IRI the builder emits or a guideline rule mentions is one of these (plus
// user-scoped node IRIs).

#include <string_view>
#include <vector>

#include "phkg/rdf/term.hpp"

namespace phkg::vocab {

namespace ns {
inline constexpr std::string_view prov = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view sio = "http://semanticscience.org/resource/";
inline constexpr std::string_view stato = "http://purl.obolibrary.org/obo/STATO_";
inline constexpr std::string_view doid = "http://purl.obolibrary.org/obo/doid#";
inline constexpr std::string_view dron = "http://purl.obolibrary.org/obo/dron#";
inline constexpr std::string_view food = "http://purl.org/heals/food/";
inline constexpr std::string_view pho = "https://w3id.org/pho-example/onto#";
inline constexpr std::string_view rdf = rdf::kRdfNs;
inline constexpr std::string_view rdfs = rdf::kRdfsNs;
inline constexpr std::string_view xsd = rdf::kXsdNs;
}  // namespace ns

using rdf::Term;

// prov
extern const Term prov_Person;
extern const Term prov_wasAssociatedWith;
extern const Term prov_startedAtTime;
extern const Term prov_endedAtTime;

// sio
extern const Term sio_hasAttribute;
extern const Term sio_hasValue;
extern const Term sio_frequency;
extern const Term sio_hasParticipant;

extern const Term stato_coefficientOfVariation;

extern const Term doid_Diabetes;
extern const Term doid_PreDiabetes;
extern const Term dron_Insulin;

extern const Term food_Carbohydrates;
extern const Term food_Fat;
extern const Term food_Protein;
extern const Term food_Calories;

// pho classes
extern const Term pho_ConsistentPattern;
extern const Term pho_LowCarbDiet;
extern const Term pho_HighCarbDiet;
extern const Term pho_LowFatDiet;
extern const Term pho_HighFatDiet;
extern const Term pho_NutrientIntakeGoal;
extern const Term pho_FixedInsulinDosage;
extern const Term pho_FixedMedicationDosage;
extern const Term pho_Directive;
extern const Term pho_Recommendation;
extern const Term pho_Constraint;
extern const Term pho_DietaryAssessment;
extern const Term pho_MediterraneanDietDirective;
extern const Term pho_MediterraneanDietRecommendation;
extern const Term pho_ConsistentCarbDietDirective;
extern const Term pho_ConsistentCarbRecommendation;

// pho granularity individuals
extern const Term pho_Daily;
extern const Term pho_Breakfast;
extern const Term pho_Lunch;
extern const Term pho_Dinner;
extern const Term pho_Snack;

// pho properties
extern const Term pho_likes;
extern const Term pho_dislikes;
extern const Term pho_allergicTo;
extern const Term pho_hasGranularity;
extern const Term pho_isPartialWindow;
extern const Term pho_hasRecommendation;
extern const Term pho_constraint;
extern const Term pho_sourceRule;
extern const Term pho_firedBecause;

extern const Term rdf_type;
extern const Term rdfs_label;

/// All term constants above, sorted.
const std::vector<Term>& all_terms();
bool is_known(const Term& term);

Term pho(std::string_view local);

}  // namespace phkg::vocab
