#include "phkg/reasoner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "phkg/error.hpp"
#include "phkg/text.hpp"
#include "phkg/vocab.hpp"

namespace phkg::reasoner {

namespace v = vocab;
using guidelines::ClassExpr;
using guidelines::GuidelineRule;
using guidelines::NutrientConstraint;
using guidelines::Polarity;
using guidelines::TagConstraint;

std::string fired_because_name(FiredBecause f) {
  return f == FiredBecause::Match ? "match" : "non-compliance";
}

const NutrientConstraint* ConstraintSet::nutrient(Nutrient n) const {
  for (const auto& c : constraints)
    if (const auto* nc = std::get_if<NutrientConstraint>(&c.payload); nc && nc->nutrient == n) return nc;
  return nullptr;
}

std::vector<std::string> ConstraintSet::required_tags() const {
  std::vector<std::string> out;
  for (const auto& c : constraints)
    if (const auto* t = std::get_if<TagConstraint>(&c.payload)) out.push_back(t->tag);
  return out;
}

Term find_user(const rdf::Graph& graph) {
  auto people = graph.subjects(v::rdf_type, v::prov_Person);
  if (people.empty()) throw PreconditionError("graph has no prov:Person user node");
  if (people.size() > 1)
    throw PreconditionError("graph has " + std::to_string(people.size()) + " prov:Person nodes; expected one");
  return people.front();
}

namespace {

struct WindowedNode {
  Term node;
  std::string start;
  bool partial;
};

std::vector<WindowedNode> windowed_nodes(const rdf::Graph& graph, const Term& user) {
  std::vector<WindowedNode> out;
  for (const auto& node : graph.objects(user, v::sio_hasAttribute)) {
    auto start = graph.first_object(node, v::prov_startedAtTime);
    if (!start || !start->is_literal()) continue;
    bool partial = graph.contains({node, v::pho_isPartialWindow, Term::boolean(true)});
    out.push_back({node, start->value().substr(0, 10), partial});
  }
  return out;
}

}  // namespace

std::optional<std::string> current_window_start(const rdf::Graph& graph, const Term& user) {
  std::optional<std::string> full, any;
  for (const auto& w : windowed_nodes(graph, user)) {
    if (!any || w.start > *any) any = w.start;
    if (!w.partial && (!full || w.start > *full)) full = w.start;
  }
  return full ? full : any;
}

rdf::Graph current_window_view(const rdf::Graph& graph, const Term& user) {
  rdf::Graph view = graph;
  auto current = current_window_start(graph, user);
  if (!current) return view;
  for (const auto& w : windowed_nodes(graph, user))
    if (w.start != *current) view.erase({user, v::sio_hasAttribute, w.node});
  return view;
}

namespace {

std::set<Term> extension(const ClassExpr& e, const rdf::Graph& g) {
  return guidelines::compile_condition(e).execute(g);
}

// Nodes the user reaches through existential restrictions that hold.
void collect_evidence(const ClassExpr& e, const Term& user, const rdf::Graph& g, std::set<Term>& out) {
  switch (e.kind()) {
    case ClassExpr::Kind::And:
    case ClassExpr::Kind::Or:
      for (const auto& op : e.operands()) collect_evidence(op, user, g, out);
      break;
    case ClassExpr::Kind::Not:
      collect_evidence(e.filler(), user, g, out);
      break;
    case ClassExpr::Kind::Some: {
      auto fillers = extension(e.filler(), g);
      for (const auto& y : g.objects(user, e.term()))
        if (fillers.contains(y)) out.insert(y);
      break;
    }
    default:
      break;
  }
}

ComplianceVerdict judge(const GuidelineRule& rule, const rdf::Graph& view, const Term& user) {
  ComplianceVerdict verdict;
  verdict.rule_id = rule.id;
  verdict.applicable = extension(rule.condition, view).contains(user);
  if (verdict.applicable) verdict.compliant = extension(rule.compliance, view).contains(user);
  std::set<Term> evidence;
  collect_evidence(rule.condition, user, view, evidence);
  collect_evidence(rule.compliance, user, view, evidence);
  verdict.evidence.assign(evidence.begin(), evidence.end());
  return verdict;
}

bool fires(const GuidelineRule& rule, const ComplianceVerdict& verdict) {
  if (!verdict.applicable) return false;
  return rule.polarity == Polarity::DirectiveOnMatch || !*verdict.compliant;
}

}  // namespace

std::vector<ComplianceVerdict> evaluate(const rdf::Graph& graph, const std::vector<GuidelineRule>& rules) {
  Term user = find_user(graph);
  rdf::Graph view = current_window_view(graph, user);
  std::vector<ComplianceVerdict> out;
  for (const auto& rule : rules) out.push_back(judge(rule, view, user));
  return out;
}

Classification classify(const rdf::Graph& graph, const std::vector<GuidelineRule>& rules) {
  Term user = find_user(graph);
  rdf::Graph view = current_window_view(graph, user);
  const std::string suffix = current_window_start(graph, user).value_or("latest");

  Classification result;
  result.graph = graph;
  for (const auto& rule : rules) {
    ComplianceVerdict verdict = judge(rule, view, user);
    if (fires(rule, verdict)) {
      Directive d;
      d.rule_id = rule.id;
      d.user = user;
      d.node = Term::iri(user.value() + "/directive/" + rule.id + "/" + suffix);
      d.recommendation_node = Term::iri(user.value() + "/recommendation/" + rule.id + "/" + suffix);
      d.directive_class = rule.directive_class;
      d.recommendation_class = rule.recommendation_class;
      d.constraint = rule.constraint;
      d.fired_because =
          rule.polarity == Polarity::DirectiveOnMatch ? FiredBecause::Match : FiredBecause::NonCompliance;

      auto& g = result.graph;
      g.insert(d.node, v::rdf_type, d.directive_class);
      g.insert(d.node, v::prov_wasAssociatedWith, user);
      g.insert(d.node, v::pho_hasRecommendation, d.recommendation_node);
      g.insert(d.node, v::pho_sourceRule, Term::literal(rule.id));
      g.insert(d.node, v::pho_firedBecause, Term::literal(fired_because_name(d.fired_because)));
      if (!rule.label.empty()) g.insert(d.node, v::rdfs_label, Term::literal(rule.label));
      g.insert(d.recommendation_node, v::rdf_type, d.recommendation_class);
      g.insert(d.recommendation_node, v::pho_constraint,
               Term::literal(guidelines::canonical_payload(d.constraint)));
      result.directives.push_back(std::move(d));
    }
    result.verdicts.push_back(std::move(verdict));
  }
  return result;
}

ConstraintSet active_constraints(const rdf::Graph& graph) {
  Term user = find_user(graph);
  ConstraintSet cs;
  for (const auto& o : graph.objects(user, v::prov_wasAssociatedWith)) {
    if (o == v::doid_Diabetes) cs.diabetes_status = DiabetesStatus::Diabetes;
    else if (o == v::doid_PreDiabetes && cs.diabetes_status == DiabetesStatus::None)
      cs.diabetes_status = DiabetesStatus::PreDiabetes;
  }
  auto strings = [&](const Term& p) {
    std::vector<std::string> out;
    for (const auto& o : graph.objects(user, p))
      if (o.is_literal()) out.push_back(o.value());
    return out;
  };
  cs.likes = strings(v::pho_likes);
  cs.dislikes = strings(v::pho_dislikes);
  cs.allergies = strings(v::pho_allergicTo);

  std::vector<ConstraintEntry> raw;
  for (const auto& d : graph.subjects(v::prov_wasAssociatedWith, user)) {
    auto rule = graph.first_object(d, v::pho_sourceRule);
    for (const auto& rec : graph.objects(d, v::pho_hasRecommendation))
      for (const auto& lit : graph.objects(rec, v::pho_constraint))
        raw.push_back({rule ? rule->value() : d.value(), guidelines::parse_payload(lit.value())});
  }
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.rule_id < b.rule_id; });

  std::map<Nutrient, std::size_t> by_nutrient;
  for (auto& entry : raw) {
    const auto* nc = std::get_if<NutrientConstraint>(&entry.payload);
    if (!nc) {
      cs.constraints.push_back(std::move(entry));
      continue;
    }
    auto it = by_nutrient.find(nc->nutrient);
    if (it == by_nutrient.end()) {
      by_nutrient[nc->nutrient] = cs.constraints.size();
      cs.constraints.push_back(std::move(entry));
      continue;
    }
    auto& kept = cs.constraints[it->second];
    auto& merged = std::get<NutrientConstraint>(kept.payload);
    double lower = std::max(merged.per_meal_lower, nc->per_meal_lower);
    double upper = std::min(merged.per_meal_upper, nc->per_meal_upper);
    if (lower > upper)
      throw DataInconsistency("conflicting " + std::string(nutrient_name(nc->nutrient)) +
                              " constraints from rules " + kept.rule_id + " and " + entry.rule_id);
    merged.per_meal_lower = lower;
    merged.per_meal_upper = upper;
    merged.daily_total = std::min(merged.daily_total, nc->daily_total);
    kept.rule_id += "," + entry.rule_id;
  }
  return cs;
}

std::string augment_question(std::string_view question, const ConstraintSet& cs) {
  std::string q(question);
  std::size_t end = q.find_last_not_of(" \t\r\n");
  std::size_t mark = (end != std::string::npos && q[end] == '?') ? end : std::string::npos;
  std::size_t close = q.rfind(']', mark == std::string::npos ? std::string::npos : mark);
  if (close != std::string::npos && q.rfind('[', close) != std::string::npos) return q;

  std::vector<std::string> clauses;
  if (cs.diabetes_status == DiabetesStatus::Diabetes) clauses.push_back("diabetic");
  if (cs.diabetes_status == DiabetesStatus::PreDiabetes) clauses.push_back("pre-diabetic");
  for (const auto& like : cs.likes) clauses.push_back("prefers " + like + " food");
  for (const auto& c : cs.constraints) {
    if (const auto* nc = std::get_if<NutrientConstraint>(&c.payload)) {
      clauses.push_back(std::string(nutrient_name(nc->nutrient)) + " between " +
                        rdf::compact_number(nc->per_meal_lower) + "-" + rdf::compact_number(nc->per_meal_upper) +
                        " " + nc->unit + ", not to exceed " + rdf::compact_number(nc->daily_total) + " " +
                        nc->unit + " daily total");
    }
  }
  for (const auto& tag : cs.required_tags()) clauses.push_back("following a " + tag + " diet");
  std::set<std::string> excluded;
  for (const auto& list : {cs.allergies, cs.dislikes})
    for (const auto& item : list)
      if (excluded.insert(item).second) clauses.push_back("no " + item);
  if (clauses.empty()) return q;

  const std::string clause = "[" + text::join(clauses, ", ") + "]";
  if (mark == std::string::npos) {
    std::string head = q.substr(0, end == std::string::npos ? 0 : end + 1);
    return head.empty() ? clause : head + " " + clause;
  }
  std::string head = q.substr(0, mark);
  while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back()))) head.pop_back();
  return head + " " + clause + q.substr(mark);
}

}  // namespace phkg::reasoner
