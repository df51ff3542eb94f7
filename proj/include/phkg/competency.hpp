#pragma once

// Answers to the fixed set of health questions a PHKG is expected to
// support. Each question id has a fixed verdict type.
//
//   G1-compliance, G2-compliance   Compliance
//   consistency.<nutrient>         bool
//   progress.<nutrient>            Trend
//   improve-diet                   item list (recommendation classes)
//   meets-preferences              bool
//   breakfast-rec, allergy-rec,
//   substitute-rec                 item list (recipe names)

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "phkg/guidelines.hpp"
#include "phkg/recommend.hpp"
#include "phkg/sparql.hpp"

namespace phkg::competency {

enum class Trend { Improving, Worsening, Maintaining };
enum class Compliance { Compliant, NonCompliant, NotApplicable };

std::string trend_name(Trend t);            // "improving", ...
std::string compliance_name(Compliance c);  // "compliant", "non-compliant", "not-applicable"

using Verdict = std::variant<bool, Trend, Compliance, std::vector<std::string>>;

struct CompetencyParams {
  /// Rules for compliance questions; empty means the built-ins.
  std::vector<guidelines::GuidelineRule> rules;
  const recommend::RecipeCatalog* catalog = nullptr;
  std::optional<MealType> meal;
  /// Allergen for allergy-rec, excluded food for substitute-rec.
  std::string item;
  double progress_band = 0.05;
};

struct CompetencyAnswer {
  std::string question;
  Verdict verdict;
  query::BindingTable bindings;
  std::string explanation;
};

/// Question ids understood by answer_competency, with `<nutrient>` spelled
/// out as "carbohydrates".
const std::vector<std::string>& question_ids();

/// Throws ValidationError for an unknown id, InsufficientData when the graph
/// lacks the windows a question needs, and PreconditionError when a
/// recommendation question has no catalog or an id needs `item`.
CompetencyAnswer answer_competency(const rdf::Graph& graph, const std::string& question,
                                   const CompetencyParams& params = {});

/// {"question", "verdict", "explanation", "bindings": {"columns", "rows"}}
nlohmann::json answer_json(const CompetencyAnswer& answer);

}  // namespace phkg::competency
