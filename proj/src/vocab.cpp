#include "phkg/vocab.hpp"

#include <algorithm>
#include <string>

namespace phkg::vocab {

namespace {
Term make(std::string_view nspace, std::string_view local) {
  std::string iri(nspace);
  iri += local;
  return Term::iri(std::move(iri));
}
}  // namespace

Term pho(std::string_view local) { return make(ns::pho, local); }

const Term prov_Person = make(ns::prov, "Person");
const Term prov_wasAssociatedWith = make(ns::prov, "wasAssociatedWith");
const Term prov_startedAtTime = make(ns::prov, "startedAtTime");
const Term prov_endedAtTime = make(ns::prov, "endedAtTime");

const Term sio_hasAttribute = make(ns::sio, "hasAttribute");
const Term sio_hasValue = make(ns::sio, "hasValue");
const Term sio_frequency = make(ns::sio, "frequency");
const Term sio_hasParticipant = make(ns::sio, "hasParticipant");

const Term stato_coefficientOfVariation = make(ns::stato, "coefficientOfVariation");

const Term doid_Diabetes = make(ns::doid, "Diabetes");
const Term doid_PreDiabetes = make(ns::doid, "PreDiabetes");
const Term dron_Insulin = make(ns::dron, "Insulin");

const Term food_Carbohydrates = make(ns::food, "Carbohydrates");
const Term food_Fat = make(ns::food, "Fat");
const Term food_Protein = make(ns::food, "Protein");
const Term food_Calories = make(ns::food, "Calories");

const Term pho_ConsistentPattern = make(ns::pho, "ConsistentPattern");
const Term pho_LowCarbDiet = make(ns::pho, "LowCarbDiet");
const Term pho_HighCarbDiet = make(ns::pho, "HighCarbDiet");
const Term pho_LowFatDiet = make(ns::pho, "LowFatDiet");
const Term pho_HighFatDiet = make(ns::pho, "HighFatDiet");
const Term pho_NutrientIntakeGoal = make(ns::pho, "NutrientIntakeGoal");
const Term pho_FixedInsulinDosage = make(ns::pho, "FixedInsulinDosage");
const Term pho_FixedMedicationDosage = make(ns::pho, "FixedMedicationDosage");
const Term pho_Directive = make(ns::pho, "Directive");
const Term pho_Recommendation = make(ns::pho, "Recommendation");
const Term pho_Constraint = make(ns::pho, "Constraint");
const Term pho_DietaryAssessment = make(ns::pho, "DietaryAssessment");
const Term pho_MediterraneanDietDirective = make(ns::pho, "MediterraneanDietDirective");
const Term pho_MediterraneanDietRecommendation = make(ns::pho, "MediterraneanDietRecommendation");
const Term pho_ConsistentCarbDietDirective = make(ns::pho, "ConsistentCarbDietDirective");
const Term pho_ConsistentCarbRecommendation = make(ns::pho, "ConsistentCarbRecommendation");

const Term pho_Daily = make(ns::pho, "Daily");
const Term pho_Breakfast = make(ns::pho, "Breakfast");
const Term pho_Lunch = make(ns::pho, "Lunch");
const Term pho_Dinner = make(ns::pho, "Dinner");
const Term pho_Snack = make(ns::pho, "Snack");

const Term pho_likes = make(ns::pho, "likes");
const Term pho_dislikes = make(ns::pho, "dislikes");
const Term pho_allergicTo = make(ns::pho, "allergicTo");
const Term pho_hasGranularity = make(ns::pho, "hasGranularity");
const Term pho_isPartialWindow = make(ns::pho, "isPartialWindow");
const Term pho_hasRecommendation = make(ns::pho, "hasRecommendation");
const Term pho_constraint = make(ns::pho, "constraint");
const Term pho_sourceRule = make(ns::pho, "sourceRule");
const Term pho_firedBecause = make(ns::pho, "firedBecause");

const Term rdf_type = make(ns::rdf, "type");
const Term rdfs_label = make(ns::rdfs, "label");

const std::vector<Term>& all_terms() {
  static const std::vector<Term> terms = [] {
    std::vector<Term> v = {
        prov_Person, prov_wasAssociatedWith, prov_startedAtTime, prov_endedAtTime,
        sio_hasAttribute, sio_hasValue, sio_frequency, sio_hasParticipant,
        stato_coefficientOfVariation, doid_Diabetes, doid_PreDiabetes, dron_Insulin,
        food_Carbohydrates, food_Fat, food_Protein, food_Calories,
        pho_ConsistentPattern, pho_LowCarbDiet, pho_HighCarbDiet, pho_LowFatDiet,
        pho_HighFatDiet, pho_NutrientIntakeGoal, pho_FixedInsulinDosage,
        pho_FixedMedicationDosage, pho_Directive, pho_Recommendation, pho_Constraint,
        pho_DietaryAssessment, pho_MediterraneanDietDirective,
        pho_MediterraneanDietRecommendation, pho_ConsistentCarbDietDirective,
        pho_ConsistentCarbRecommendation, pho_Daily, pho_Breakfast, pho_Lunch, pho_Dinner,
        pho_Snack, pho_likes, pho_dislikes, pho_allergicTo, pho_hasGranularity,
        pho_isPartialWindow, pho_hasRecommendation, pho_constraint, pho_sourceRule,
        pho_firedBecause, rdf_type, rdfs_label};
    std::sort(v.begin(), v.end());
    return v;
  }();
  return terms;
}

bool is_known(const Term& term) {
  const auto& terms = all_terms();
  return std::binary_search(terms.begin(), terms.end(), term);
}

}  // namespace phkg::vocab
