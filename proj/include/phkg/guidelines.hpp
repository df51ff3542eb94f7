#pragma once

// Guideline rules: class-expression conditions over the PHKG, the directive
// /recommendation they assert, and the machine-readable constraint payload a
// recommendation carries.
//
// Class expressions are evaluated under closed-world semantics: the
// extension of an expression is computed from exactly the triples present,
// and `only` restrictions are checked against the materialised property
// image of each node (an empty image satisfies them vacuously).

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phkg/foodlog.hpp"
#include "phkg/rdf/graph.hpp"

namespace phkg::guidelines {

using rdf::Term;

class ClassExpr {
 public:
  enum class Kind { Named, And, Or, Some, Only, HasValue, Not };

  static ClassExpr named(Term cls);
  static ClassExpr all_of(std::vector<ClassExpr> operands);
  static ClassExpr any_of(std::vector<ClassExpr> operands);
  static ClassExpr some(Term property, ClassExpr filler);
  static ClassExpr only(Term property, ClassExpr filler);
  static ClassExpr has_value(Term property, Term value);
  /// Closed-world complement. Built by the rule constructors; rule
  /// documents cannot spell it.
  static ClassExpr complement(ClassExpr operand);

  Kind kind() const { return kind_; }
  /// Class IRI for Named, property IRI for Some/Only/HasValue.
  const Term& term() const { return term_; }
  /// Filled only for HasValue.
  const Term& value() const { return value_; }
  const std::vector<ClassExpr>& operands() const { return operands_; }
  /// Filler of Some/Only, operand of Not.
  const ClassExpr& filler() const { return operands_.front(); }

  std::size_t depth() const;
  /// Manchester-style rendering with prefixed names where possible.
  std::string to_string(const rdf::PrefixMap& prefixes) const;

  bool operator==(const ClassExpr&) const = default;

 private:
  Kind kind_ = Kind::Named;
  Term term_;
  Term value_;
  std::vector<ClassExpr> operands_;
};

std::string_view kind_name(ClassExpr::Kind kind);

struct TagConstraint {
  std::string tag;
  bool operator==(const TagConstraint&) const = default;
};

struct NutrientConstraint {
  Nutrient nutrient = Nutrient::Carbohydrates;
  std::string unit = "g";
  double per_meal_lower = 0;
  double per_meal_upper = 0;
  double daily_total = 0;

  double midpoint() const { return (per_meal_lower + per_meal_upper) / 2.0; }
  bool operator==(const NutrientConstraint&) const = default;
};

using ConstraintPayload = std::variant<TagConstraint, NutrientConstraint>;

/// Throws ValidationError when a payload breaks its invariants.
void validate_payload(const ConstraintPayload& payload);

/// Accepts `{"tag": "..."}` or `{"carbohydrate": {"unit": "g", "meal":
/// {"type": "range", "lower": n, "upper": n}, "daily_total": n}}`; numbers
/// may also be quoted. Throws ValidationError.
ConstraintPayload parse_payload(std::string_view json_text);

/// Sorted-key compact JSON; `parse_payload(canonical_payload(p)) == p`.
std::string canonical_payload(const ConstraintPayload& payload);

enum class Polarity { DirectiveOnNonCompliance, DirectiveOnMatch };

std::string polarity_name(Polarity p);  // "on-non-compliance" / "on-match"

struct GuidelineRule {
  std::string id;
  std::string label;
  ClassExpr condition;
  ClassExpr compliance;
  Polarity polarity = Polarity::DirectiveOnNonCompliance;
  Term directive_class;
  Term recommendation_class;
  ConstraintPayload constraint;

  bool operator==(const GuidelineRule&) const = default;
};

/// Assembles a rule from who it targets (`population`) and the pattern it
/// inspects. On-match rules apply when the pattern is present, and being
/// compliant means the pattern is absent. On-non-compliance rules apply to
/// the whole population, and being compliant means the pattern is present.
GuidelineRule make_rule(std::string id, std::string label, ClassExpr population,
                        ClassExpr pattern, Polarity polarity, Term directive_class,
                        Term recommendation_class, ConstraintPayload constraint);

/// Throws ValidationError when the rule breaks its invariants.
void validate_rule(const GuidelineRule& rule);

/// The two built-in dietary guidelines: replace a high-carb/low-fat diet
/// with a Mediterranean diet (G1), and keep carbohydrate intake consistent
/// under fixed insulin dosing (G2).
const std::vector<GuidelineRule>& builtin_guidelines();

/// Parses a single-rule `.rule` document (format in rules/README.md).
/// Throws ParseError on syntax errors, ValidationError for unknown terms or
/// an invalid payload.
GuidelineRule parse_guideline(std::string_view document);

/// Parses just a class expression in rule-document syntax.
ClassExpr parse_class_expr(std::string_view text);

struct PlanStep {
  enum class Op {
    Scan,        // push subjects of `pattern` (object bound)
    Join,        // pop S; push subjects x with (x p y), y in S
    Forall,      // pop S; push resources x whose every (x p y) has y in S
    Intersect,   // pop `arity`; push their intersection
    Union,       // pop `arity`; push their union
    Complement,  // pop S; push resources not in S
  };
  Op op = Op::Scan;
  rdf::TriplePattern pattern;
  std::string subject_var;
  std::string object_var;
  std::size_t arity = 0;
};

/// Compiled, stack-based evaluation program for one class expression.
class MatchPlan {
 public:
  explicit MatchPlan(std::vector<PlanStep> steps) : steps_(std::move(steps)) {}

  const std::vector<PlanStep>& steps() const { return steps_; }
  /// Nodes in the expression's closed-world extension, sorted.
  std::set<Term> execute(const rdf::Graph& graph) const;
  /// One line per step, e.g. `scan (?x0 rdf:type prov:Person)`.
  std::string describe(const rdf::PrefixMap& prefixes) const;

 private:
  std::vector<PlanStep> steps_;
};

/// Throws UnsupportedFeature naming the offending construct.
MatchPlan compile_condition(const ClassExpr& expr);

}  // namespace phkg::guidelines
