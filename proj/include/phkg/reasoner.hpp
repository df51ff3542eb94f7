#pragma once

// Rule evaluation over a PHKG: compliance verdicts, directive assertion,
// extraction of the active constraint set, and question augmentation.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phkg/builder.hpp"
#include "phkg/guidelines.hpp"
#include "phkg/rdf/graph.hpp"

namespace phkg::reasoner {

using rdf::Term;

enum class FiredBecause { Match, NonCompliance };

std::string fired_because_name(FiredBecause f);  // "match" / "non-compliance"

struct Directive {
  Term node;
  Term directive_class;
  Term user;
  Term recommendation_node;
  Term recommendation_class;
  guidelines::ConstraintPayload constraint;
  FiredBecause fired_because = FiredBecause::Match;
  std::string rule_id;
};

struct ComplianceVerdict {
  std::string rule_id;
  bool applicable = false;
  /// Empty when the rule does not apply.
  std::optional<bool> compliant;
  /// Pattern nodes reached through the rule's existential restrictions.
  std::vector<Term> evidence;
};

struct ConstraintEntry {
  /// Source rule; comma-joined ids when overlapping ranges were merged.
  std::string rule_id;
  guidelines::ConstraintPayload payload;
};

struct ConstraintSet {
  DiabetesStatus diabetes_status = DiabetesStatus::None;
  std::vector<std::string> likes;
  std::vector<std::string> dislikes;
  std::vector<std::string> allergies;
  std::vector<ConstraintEntry> constraints;

  bool empty() const {
    return diabetes_status == DiabetesStatus::None && likes.empty() && dislikes.empty() &&
           allergies.empty() && constraints.empty();
  }
  const guidelines::NutrientConstraint* nutrient(Nutrient n) const;
  std::vector<std::string> required_tags() const;
};

struct Classification {
  rdf::Graph graph;
  std::vector<Directive> directives;
  std::vector<ComplianceVerdict> verdicts;
};

/// The single prov:Person node. Throws PreconditionError when there is none
/// or more than one.
Term find_user(const rdf::Graph& graph);

/// Date (YYYY-MM-DD) of the window rules are judged on: the latest start
/// among full windows, else the latest start overall. Empty when the graph
/// has no windowed pattern nodes.
std::optional<std::string> current_window_start(const rdf::Graph& graph, const Term& user);

/// Copy of `graph` in which the user's links to pattern nodes of other
/// windows are removed, so older windows cannot satisfy a rule.
rdf::Graph current_window_view(const rdf::Graph& graph, const Term& user);

/// Verdicts only; no triples are asserted.
std::vector<ComplianceVerdict> evaluate(const rdf::Graph& graph,
                                        const std::vector<guidelines::GuidelineRule>& rules);

/// Evaluates every rule and asserts directive and recommendation nodes for
/// the ones that fire. The input triples are kept unchanged.
Classification classify(const rdf::Graph& graph, const std::vector<guidelines::GuidelineRule>& rules);

/// Reads back asserted recommendations plus the profile facts. Throws
/// DataInconsistency when two rules constrain the same nutrient with
/// disjoint ranges; overlapping ranges are intersected.
ConstraintSet active_constraints(const rdf::Graph& graph);

/// Inserts a bracketed clause of implicit knowledge before the trailing
/// `?`. Returns the question unchanged when there is nothing to add or it
/// already carries a bracketed clause.
std::string augment_question(std::string_view question, const ConstraintSet& cs);

}  // namespace phkg::reasoner
