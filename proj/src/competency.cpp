#include "phkg/competency.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "phkg/builder.hpp"
#include "phkg/error.hpp"
#include "phkg/reasoner.hpp"
#include "phkg/text.hpp"
#include "phkg/vocab.hpp"

namespace phkg::competency {

using nlohmann::json;
using rdf::Term;
namespace v = vocab;

std::string trend_name(Trend t) {
  switch (t) {
    case Trend::Improving: return "improving";
    case Trend::Worsening: return "worsening";
    case Trend::Maintaining: return "maintaining";
  }
  return "maintaining";
}

std::string compliance_name(Compliance c) {
  switch (c) {
    case Compliance::Compliant: return "compliant";
    case Compliance::NonCompliant: return "non-compliant";
    case Compliance::NotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

const std::vector<std::string>& question_ids() {
  static const std::vector<std::string> ids = {
      "G1-compliance",   "G2-compliance",     "consistency.carbohydrates", "progress.carbohydrates",
      "improve-diet",    "meets-preferences", "breakfast-rec",             "allergy-rec",
      "substitute-rec"};
  return ids;
}

namespace {

struct WindowRow {
  Term pattern;
  std::string start;
  double cv = 0;
  std::vector<Term> row;
};

query::BindingTable run(const rdf::Graph& graph, const std::string& sparql) {
  return query::execute(graph, query::parse_query(sparql));
}

// Daily consistency nodes of full windows, oldest first.
std::pair<query::BindingTable, std::vector<WindowRow>> full_windows(const rdf::Graph& graph, Nutrient n) {
  auto table = run(graph,
                   "SELECT ?pattern ?start ?cv WHERE {\n"
                   "  ?user a prov:Person ; sio:hasAttribute ?pattern .\n"
                   "  ?pattern a stato:coefficientOfVariation ;\n"
                   "    sio:hasAttribute <" + nutrient_term(n).value() + "> ;\n"
                   "    pho:hasGranularity pho:Daily ;\n"
                   "    prov:startedAtTime ?start ;\n"
                   "    sio:hasValue ?cv .\n"
                   "}");
  std::vector<WindowRow> rows;
  for (const auto& r : table.rows) {
    if (graph.contains({r[0], v::pho_isPartialWindow, Term::boolean(true)})) continue;
    auto cv = r[2].numeric_value();
    if (!cv) continue;
    rows.push_back({r[0], r[1].value().substr(0, 10), *cv, r});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
  return {table, rows};
}

query::BindingTable only_rows(const query::BindingTable& base, std::vector<std::vector<Term>> rows) {
  query::BindingTable t;
  t.columns = base.columns;
  t.rows = std::move(rows);
  std::sort(t.rows.begin(), t.rows.end(), query::row_less);
  return t;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

Nutrient nutrient_suffix(const std::string& question, std::size_t prefix_len) {
  return parse_nutrient(question.substr(prefix_len));
}

CompetencyAnswer consistency(const rdf::Graph& graph, const std::string& question, Nutrient n) {
  auto [table, rows] = full_windows(graph, n);
  if (rows.empty())
    throw InsufficientData("no full-window " + std::string(nutrient_name(n)) + " consistency pattern in the graph");
  const auto& latest = rows.back();
  bool consistent = graph.contains({latest.pattern, v::rdf_type, v::pho_ConsistentPattern});
  CompetencyAnswer a{question, consistent, only_rows(table, {latest.row}), {}};
  a.explanation = "daily " + std::string(nutrient_name(n)) + " coefficient of variation " + fmt(latest.cv) +
                  " for the window starting " + latest.start + "; " +
                  (consistent ? "consistent" : "not consistent");
  return a;
}

CompetencyAnswer progress(const rdf::Graph& graph, const std::string& question, Nutrient n, double band) {
  auto [table, rows] = full_windows(graph, n);
  if (rows.size() < 2)
    throw InsufficientData("progress needs two full windows, graph has " + std::to_string(rows.size()));
  const auto& prev = rows[rows.size() - 2];
  const auto& last = rows.back();
  double delta = last.cv - prev.cv;
  Trend trend = delta < -band ? Trend::Improving : delta > band ? Trend::Worsening : Trend::Maintaining;
  CompetencyAnswer a{question, trend, only_rows(table, {prev.row, last.row}), {}};
  a.explanation = std::string(nutrient_name(n)) + " coefficient of variation went from " + fmt(prev.cv) + " (" +
                  prev.start + ") to " + fmt(last.cv) + " (" + last.start + "), change " + fmt(delta) +
                  "; " + trend_name(trend);
  return a;
}

CompetencyAnswer compliance(const rdf::Graph& graph, const std::string& question, const std::string& rule_id,
                            const CompetencyParams& params) {
  const auto& rules = params.rules.empty() ? guidelines::builtin_guidelines() : params.rules;
  auto it = std::find_if(rules.begin(), rules.end(), [&](const auto& r) { return r.id == rule_id; });
  if (it == rules.end()) throw ValidationError("no rule with id '" + rule_id + "'");
  auto verdict = reasoner::evaluate(graph, {*it}).front();
  Compliance c = !verdict.applicable   ? Compliance::NotApplicable
                 : *verdict.compliant ? Compliance::Compliant
                                      : Compliance::NonCompliant;
  query::BindingTable t;
  t.columns = {"evidence"};
  for (const auto& e : verdict.evidence) t.rows.push_back({e});
  CompetencyAnswer a{question, c, t, {}};
  a.explanation = "rule " + rule_id + " is " + compliance_name(c);
  if (!verdict.evidence.empty())
    a.explanation += " (" + std::to_string(verdict.evidence.size()) + " supporting pattern node" +
                     (verdict.evidence.size() == 1 ? ")" : "s)");
  return a;
}

query::BindingTable directive_table(const rdf::Graph& graph) {
  return run(graph,
             "SELECT ?directive ?recommendation ?class ?constraint WHERE {\n"
             "  ?user a prov:Person .\n"
             "  ?directive prov:wasAssociatedWith ?user ; pho:hasRecommendation ?recommendation .\n"
             "  ?recommendation a ?class ; pho:constraint ?constraint .\n"
             "}");
}

std::string local_name(const Term& t) {
  const auto& s = t.value();
  auto pos = s.find_last_of("#/");
  return pos == std::string::npos ? s : s.substr(pos + 1);
}

CompetencyAnswer improve_diet(const rdf::Graph& graph, const std::string& question) {
  auto table = directive_table(graph);
  std::vector<std::string> items;
  for (const auto& r : table.rows) items.push_back(local_name(r[2]));
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  CompetencyAnswer a{question, items, table, {}};
  if (items.empty()) {
    a.explanation = "no guideline directive applies";
  } else {
    auto cs = reasoner::active_constraints(graph);
    cs.likes.clear();
    cs.dislikes.clear();
    cs.allergies.clear();
    cs.diabetes_status = DiabetesStatus::None;
    a.explanation = text::join(items, ", ") + " " + reasoner::augment_question("", cs);
  }
  return a;
}

CompetencyAnswer meets_preferences(const rdf::Graph& graph, const std::string& question,
                                   const CompetencyParams& params) {
  auto table = directive_table(graph);
  auto cs = reasoner::active_constraints(graph);
  bool ok = table.rows.empty();
  std::string why = ok ? "no guideline directive is active" : "active directives call for a change of diet";
  if (ok && !cs.likes.empty() && params.catalog) {
    auto ranked = recommend::filter_recipes(*params.catalog, cs, params.meal);
    bool liked = std::any_of(ranked.begin(), ranked.end(), [](const auto& r) { return !r.matched_tags.empty(); });
    if (!liked) {
      ok = false;
      why = "no admissible recipe matches a liked tag";
    }
  }
  return {question, ok, table, why};
}

CompetencyAnswer recipes(const std::string& question, reasoner::ConstraintSet cs,
                         std::optional<MealType> meal, const CompetencyParams& params,
                         const std::string& natural_question) {
  if (!params.catalog) throw PreconditionError("question '" + question + "' needs a recipe catalog");
  auto ranked = recommend::filter_recipes(*params.catalog, cs, meal);
  std::vector<std::string> names;
  query::BindingTable t;
  t.columns = {"recipe"};
  for (const auto& r : ranked) {
    names.push_back(r.recipe->name);
    t.rows.push_back({Term::literal(r.recipe->name)});
  }
  CompetencyAnswer a{question, names, t, reasoner::augment_question(natural_question, cs)};
  auto note = recommend::daily_budget_note(cs, std::nullopt);
  if (!note.empty()) a.explanation += "; " + note;
  return a;
}

}  // namespace

CompetencyAnswer answer_competency(const rdf::Graph& graph, const std::string& question,
                                   const CompetencyParams& params) {
  if (question == "G1-compliance" || question == "G2-compliance")
    return compliance(graph, question, question.substr(0, 2), params);
  if (question.starts_with("consistency."))
    return consistency(graph, question, nutrient_suffix(question, 12));
  if (question.starts_with("progress."))
    return progress(graph, question, nutrient_suffix(question, 9), params.progress_band);
  if (question == "improve-diet") return improve_diet(graph, question);
  if (question == "meets-preferences") return meets_preferences(graph, question, params);
  if (question == "breakfast-rec")
    return recipes(question, reasoner::active_constraints(graph), MealType::Breakfast, params,
                   "What should I eat for breakfast?");
  if (question == "allergy-rec" || question == "substitute-rec") {
    if (params.item.empty()) throw PreconditionError("question '" + question + "' needs an item");
    auto cs = reasoner::active_constraints(graph);
    const std::string item = text::to_lower(params.item);
    if (question == "allergy-rec") {
      cs.allergies.push_back(item);
      return recipes(question, cs, params.meal, params,
                     "What foods can I eat if I have a " + item + " allergy?");
    }
    cs.dislikes.push_back(item);
    return recipes(question, cs, params.meal, params, "What can I substitute for " + item + "?");
  }
  throw ValidationError("unknown question id '" + question + "'");
}

json answer_json(const CompetencyAnswer& a) {
  json verdict = std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) return v;
        else if constexpr (std::is_same_v<T, Trend>) return trend_name(v);
        else if constexpr (std::is_same_v<T, Compliance>) return compliance_name(v);
        else return json(v);
      },
      a.verdict);
  json rows = json::array();
  for (const auto& r : a.bindings.rows) {
    json row = json::array();
    for (const auto& t : r) row.push_back(t.to_string());
    rows.push_back(row);
  }
  return {{"question", a.question},
          {"verdict", verdict},
          {"explanation", a.explanation},
          {"bindings", {{"columns", a.bindings.columns}, {"rows", rows}}}};
}

}  // namespace phkg::competency
