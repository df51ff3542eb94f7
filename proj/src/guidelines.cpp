#include "phkg/guidelines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>

#include <nlohmann/json.hpp>

#include "phkg/error.hpp"
#include "phkg/text.hpp"
#include "phkg/vocab.hpp"

namespace phkg::guidelines {

using nlohmann::json;
namespace v = vocab;

// ---------------------------------------------------------------------------
// ClassExpr

ClassExpr ClassExpr::named(Term cls) {
  if (!cls.is_iri()) throw ValidationError("named class must be an IRI");
  ClassExpr e;
  e.kind_ = Kind::Named;
  e.term_ = std::move(cls);
  return e;
}

ClassExpr ClassExpr::all_of(std::vector<ClassExpr> operands) {
  if (operands.empty()) throw ValidationError("'and' needs at least one operand");
  ClassExpr e;
  e.kind_ = Kind::And;
  e.operands_ = std::move(operands);
  return e;
}

ClassExpr ClassExpr::any_of(std::vector<ClassExpr> operands) {
  if (operands.empty()) throw ValidationError("'or' needs at least one operand");
  ClassExpr e;
  e.kind_ = Kind::Or;
  e.operands_ = std::move(operands);
  return e;
}

ClassExpr ClassExpr::some(Term property, ClassExpr filler) {
  if (!property.is_iri()) throw ValidationError("'some' property must be an IRI");
  ClassExpr e;
  e.kind_ = Kind::Some;
  e.term_ = std::move(property);
  e.operands_.push_back(std::move(filler));
  return e;
}

ClassExpr ClassExpr::only(Term property, ClassExpr filler) {
  if (!property.is_iri()) throw ValidationError("'only' property must be an IRI");
  ClassExpr e;
  e.kind_ = Kind::Only;
  e.term_ = std::move(property);
  e.operands_.push_back(std::move(filler));
  return e;
}

ClassExpr ClassExpr::has_value(Term property, Term value) {
  if (!property.is_iri()) throw ValidationError("'hasValue' property must be an IRI");
  ClassExpr e;
  e.kind_ = Kind::HasValue;
  e.term_ = std::move(property);
  e.value_ = std::move(value);
  return e;
}

ClassExpr ClassExpr::complement(ClassExpr operand) {
  ClassExpr e;
  e.kind_ = Kind::Not;
  e.operands_.push_back(std::move(operand));
  return e;
}

std::size_t ClassExpr::depth() const {
  std::size_t d = 0;
  for (const auto& op : operands_) d = std::max(d, op.depth());
  return d + 1;
}

std::string_view kind_name(ClassExpr::Kind kind) {
  switch (kind) {
    case ClassExpr::Kind::Named: return "named class";
    case ClassExpr::Kind::And: return "and";
    case ClassExpr::Kind::Or: return "or";
    case ClassExpr::Kind::Some: return "some";
    case ClassExpr::Kind::Only: return "only";
    case ClassExpr::Kind::HasValue: return "hasValue";
    case ClassExpr::Kind::Not: return "not";
  }
  return "?";
}

namespace {

std::string abbreviate(const Term& t, const rdf::PrefixMap& prefixes) {
  if (!t.is_iri()) return t.to_string();
  std::string best;
  std::size_t best_len = 0;
  for (const auto& [prefix, ns] : prefixes) {
    if (!ns.empty() && t.value().starts_with(ns) && ns.size() > best_len) {
      best = prefix + ":" + t.value().substr(ns.size());
      best_len = ns.size();
    }
  }
  return best_len ? best : t.to_string();
}

}  // namespace

std::string ClassExpr::to_string(const rdf::PrefixMap& prefixes) const {
  auto wrapped = [&](const ClassExpr& e) {
    bool atomic = e.kind_ == Kind::Named;
    return atomic ? e.to_string(prefixes) : "(" + e.to_string(prefixes) + ")";
  };
  switch (kind_) {
    case Kind::Named: return abbreviate(term_, prefixes);
    case Kind::And:
    case Kind::Or: {
      std::vector<std::string> parts;
      for (const auto& op : operands_) parts.push_back(wrapped(op));
      return text::join(parts, kind_ == Kind::And ? " and " : " or ");
    }
    case Kind::Some: return abbreviate(term_, prefixes) + " some " + wrapped(filler());
    case Kind::Only: return abbreviate(term_, prefixes) + " only " + wrapped(filler());
    case Kind::HasValue: return abbreviate(term_, prefixes) + " hasValue " + abbreviate(value_, prefixes);
    case Kind::Not: return "not " + wrapped(filler());
  }
  return {};
}

// ---------------------------------------------------------------------------
// Constraint payloads

void validate_payload(const ConstraintPayload& payload) {
  if (const auto* tag = std::get_if<TagConstraint>(&payload)) {
    if (text::trim(tag->tag).empty()) throw ValidationError("tag constraint has an empty tag");
    return;
  }
  const auto& n = std::get<NutrientConstraint>(payload);
  if (n.unit != "g") throw ValidationError("nutrient constraint unit must be \"g\", got \"" + n.unit + "\"");
  for (double x : {n.per_meal_lower, n.per_meal_upper, n.daily_total})
    if (!(x > 0) || !std::isfinite(x)) throw ValidationError("nutrient constraint amounts must be > 0");
  if (n.per_meal_lower > n.per_meal_upper)
    throw ValidationError("nutrient constraint lower bound " + rdf::compact_number(n.per_meal_lower) +
                          " exceeds upper bound " + rdf::compact_number(n.per_meal_upper));
}

namespace {

double number_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(std::string("constraint payload lacks '") + key + "'");
  if (it->is_number()) return it->get<double>();
  if (it->is_string()) {
    const std::string s = it->get<std::string>();
    try {
      std::size_t used = 0;
      double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::logic_error&) {
    }
  }
  throw ValidationError(std::string("constraint payload field '") + key + "' must be a number");
}

json number_json(double x) {
  if (std::floor(x) == x && std::abs(x) < 1e15) return static_cast<long long>(x);
  return x;
}

std::string payload_key(Nutrient n) {
  switch (n) {
    case Nutrient::Carbohydrates: return "carbohydrate";
    default: return std::string(nutrient_name(n));
  }
}

}  // namespace

ConstraintPayload parse_payload(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("constraint payload is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.size() != 1)
    throw ValidationError("constraint payload must be an object with exactly one key");
  ConstraintPayload out;
  if (doc.contains("tag")) {
    if (!doc["tag"].is_string()) throw ValidationError("constraint payload 'tag' must be a string");
    out = TagConstraint{doc["tag"].get<std::string>()};
  } else if (doc.contains("carbohydrate")) {
    const json& body = doc["carbohydrate"];
    if (!body.is_object()) throw ValidationError("constraint payload 'carbohydrate' must be an object");
    NutrientConstraint n;
    n.nutrient = Nutrient::Carbohydrates;
    n.unit = body.value("unit", std::string());
    auto meal = body.find("meal");
    if (meal == body.end() || !meal->is_object())
      throw ValidationError("constraint payload lacks a 'meal' range");
    if (meal->value("type", std::string("range")) != "range")
      throw ValidationError("only 'range' meal constraints are supported");
    n.per_meal_lower = number_field(*meal, "lower");
    n.per_meal_upper = number_field(*meal, "upper");
    n.daily_total = number_field(body, body.contains("daily total") ? "daily total" : "daily_total");
    out = n;
  } else {
    throw ValidationError("unsupported constraint payload key '" + doc.begin().key() + "'");
  }
  validate_payload(out);
  return out;
}

std::string canonical_payload(const ConstraintPayload& payload) {
  if (const auto* tag = std::get_if<TagConstraint>(&payload)) return json{{"tag", tag->tag}}.dump();
  const auto& n = std::get<NutrientConstraint>(payload);
  json body = {{"unit", n.unit},
               {"meal", {{"type", "range"}, {"lower", number_json(n.per_meal_lower)}, {"upper", number_json(n.per_meal_upper)}}},
               {"daily_total", number_json(n.daily_total)}};
  return json{{payload_key(n.nutrient), body}}.dump();
}

// ---------------------------------------------------------------------------
// Rules

std::string polarity_name(Polarity p) {
  return p == Polarity::DirectiveOnMatch ? "on-match" : "on-non-compliance";
}

GuidelineRule make_rule(std::string id, std::string label, ClassExpr population, ClassExpr pattern,
                        Polarity polarity, Term directive_class, Term recommendation_class,
                        ConstraintPayload constraint) {
  GuidelineRule r;
  r.id = std::move(id);
  r.label = std::move(label);
  r.polarity = polarity;
  if (polarity == Polarity::DirectiveOnMatch) {
    r.condition = ClassExpr::all_of({std::move(population), pattern});
    r.compliance = ClassExpr::complement(std::move(pattern));
  } else {
    r.condition = std::move(population);
    r.compliance = std::move(pattern);
  }
  r.directive_class = std::move(directive_class);
  r.recommendation_class = std::move(recommendation_class);
  r.constraint = std::move(constraint);
  validate_rule(r);
  return r;
}

void validate_rule(const GuidelineRule& rule) {
  if (rule.id.empty()) throw ValidationError("rule id is empty");
  for (char c : rule.id)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'))
      throw ValidationError("rule id '" + rule.id + "' must be made of [A-Za-z0-9_-]");
  const std::string pho(v::ns::pho);
  auto in_pho = [&](const Term& t) { return t.is_iri() && t.value().starts_with(pho); };
  if (!in_pho(rule.directive_class) || !in_pho(rule.recommendation_class))
    throw ValidationError("rule " + rule.id + ": directive and recommendation classes must be pho: IRIs");
  if (rule.directive_class == rule.recommendation_class)
    throw ValidationError("rule " + rule.id + ": directive and recommendation classes must differ");
  validate_payload(rule.constraint);
}

const std::vector<GuidelineRule>& builtin_guidelines() {
  static const std::vector<GuidelineRule> rules = [] {
    using E = ClassExpr;
    auto diabetic = E::any_of({E::has_value(v::prov_wasAssociatedWith, v::doid_Diabetes),
                               E::has_value(v::prov_wasAssociatedWith, v::doid_PreDiabetes)});
    auto habitual = [](const Term& label) {
      return E::some(v::sio_hasAttribute, E::all_of({E::named(v::pho_ConsistentPattern), E::named(label)}));
    };

    auto g1 = make_rule(
        "G1",
        "For pre-diabetic and diabetic individuals diet low in total fat but relatively high in "
        "carbohydrates should be replaced with Mediterranean diet.",
        E::all_of({E::named(v::prov_Person), diabetic}),
        E::all_of({habitual(v::pho_HighCarbDiet), habitual(v::pho_LowFatDiet)}),
        Polarity::DirectiveOnMatch, v::pho_MediterraneanDietDirective,
        v::pho_MediterraneanDietRecommendation, TagConstraint{"Mediterranean"});

    auto g2 = make_rule(
        "G2",
        "For individuals whose daily insulin dosing is fixed, a consistent pattern of carbohydrate "
        "intake with respect to time and amount may be recommended to improve glycemic control and "
        "reduce the risk of hypoglycemia.",
        E::all_of({E::named(v::prov_Person), diabetic,
                   E::some(v::sio_hasAttribute, E::named(v::pho_FixedInsulinDosage))}),
        E::some(v::sio_hasAttribute,
                E::all_of({E::named(v::pho_ConsistentPattern),
                           E::has_value(v::sio_hasAttribute, v::food_Carbohydrates)})),
        Polarity::DirectiveOnNonCompliance, v::pho_ConsistentCarbDietDirective,
        v::pho_ConsistentCarbRecommendation,
        NutrientConstraint{Nutrient::Carbohydrates, "g", 30, 45, 150});
    return std::vector<GuidelineRule>{g1, g2};
  }();
  return rules;
}

// ---------------------------------------------------------------------------
// Rule documents

namespace {

struct Token {
  enum class Type { LParen, RParen, Name, Iri, Literal, End } type;
  std::string text;
  std::size_t column = 0;
  Term literal;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, std::size_t line) : in_(text), line_(line) { next(); }

  ClassExpr parse() {
    ClassExpr e = disjunction();
    if (tok_.type != Token::Type::End) fail("unexpected '" + tok_.text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, tok_.column);
  }

  void next() {
    in_.skip_ws_and_comments('#');
    tok_ = Token{Token::Type::End, "", in_.column(), {}};
    if (in_.at_end()) return;
    char c = in_.peek();
    if (c == '(') {
      in_.advance();
      tok_.type = Token::Type::LParen;
      tok_.text = "(";
    } else if (c == ')') {
      in_.advance();
      tok_.type = Token::Type::RParen;
      tok_.text = ")";
    } else if (c == '<') {
      in_.advance();
      std::string iri;
      while (!in_.at_end() && in_.peek() != '>') iri += in_.get();
      if (in_.at_end()) fail("unterminated IRI");
      in_.advance();
      tok_.type = Token::Type::Iri;
      tok_.text = iri;
    } else if (c == '"') {
      in_.advance();
      std::string lex;
      while (!in_.at_end() && in_.peek() != '"') {
        if (in_.peek() == '\\') in_.advance();
        lex += in_.get();
      }
      if (in_.at_end()) fail("unterminated string literal");
      in_.advance();
      std::string datatype;
      if (in_.peek() == '^' && in_.peek(1) == '^') {
        in_.advance(2);
        std::string name;
        while (!in_.at_end() && !std::isspace(static_cast<unsigned char>(in_.peek())) && in_.peek() != ')')
          name += in_.get();
        if (name.size() > 2 && name.front() == '<' && name.back() == '>')
          datatype = Term::iri(name.substr(1, name.size() - 2)).value();
        else
          datatype = resolve(name).value();
      }
      tok_.type = Token::Type::Literal;
      tok_.text = "\"" + lex + "\"";
      tok_.literal = Term::literal(lex, datatype);
    } else {
      std::string word;
      while (!in_.at_end()) {
        char ch = in_.peek();
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')') break;
        word += in_.get();
      }
      tok_.type = Token::Type::Name;
      tok_.text = word;
    }
  }

  bool keyword(std::string_view kw) const {
    return tok_.type == Token::Type::Name && text::to_lower(tok_.text) == text::to_lower(kw);
  }

  Term resolve(const std::string& name) const {
    if (name.empty()) fail("expected a term");
    auto colon = name.find(':');
    if (colon == std::string::npos) fail("expected prefixed name, found '" + name + "'");
    const auto& prefixes = rdf::standard_prefixes();
    auto it = prefixes.find(name.substr(0, colon));
    if (it == prefixes.end()) throw ResolutionError("unknown prefix in '" + name + "'");
    return Term::iri(it->second + name.substr(colon + 1));
  }

  Term known_term() {
    Term t;
    if (tok_.type == Token::Type::Iri) {
      t = Term::iri(tok_.text);
    } else if (tok_.type == Token::Type::Name) {
      t = resolve(tok_.text);
    } else {
      fail("expected a term, found '" + tok_.text + "'");
    }
    if (!v::is_known(t)) throw ValidationError("unknown term '" + tok_.text + "' in rule expression");
    next();
    return t;
  }

  void reject_unsupported() const {
    for (auto kw : {"not", "min", "max", "exactly", "inverse", "that", "value", "self"})
      if (keyword(kw)) throw UnsupportedFeature("unsupported class-expression construct '" + tok_.text + "'");
  }

  ClassExpr disjunction() {
    std::vector<ClassExpr> ops{conjunction()};
    while (keyword("or")) {
      next();
      ops.push_back(conjunction());
    }
    return ops.size() == 1 ? std::move(ops.front()) : ClassExpr::any_of(std::move(ops));
  }

  ClassExpr conjunction() {
    std::vector<ClassExpr> ops{unary()};
    while (keyword("and")) {
      next();
      ops.push_back(unary());
    }
    return ops.size() == 1 ? std::move(ops.front()) : ClassExpr::all_of(std::move(ops));
  }

  ClassExpr unary() {
    reject_unsupported();
    if (tok_.type == Token::Type::LParen) {
      next();
      ClassExpr e = disjunction();
      if (tok_.type != Token::Type::RParen) fail("expected ')'");
      next();
      return e;
    }
    if (tok_.type == Token::Type::End) fail("unexpected end of expression");
    if (keyword("and") || keyword("or") || keyword("some") || keyword("only") || keyword("hasValue"))
      fail("unexpected keyword '" + tok_.text + "'");
    Term head = known_term();
    reject_unsupported();
    if (keyword("some")) {
      next();
      return ClassExpr::some(head, unary());
    }
    if (keyword("only")) {
      next();
      return ClassExpr::only(head, unary());
    }
    if (keyword("hasValue")) {
      next();
      if (tok_.type == Token::Type::Literal) {
        Term value = tok_.literal;
        next();
        return ClassExpr::has_value(head, value);
      }
      if (keyword("true") || keyword("false")) {
        bool b = keyword("true");
        next();
        return ClassExpr::has_value(head, Term::boolean(b));
      }
      return ClassExpr::has_value(head, known_term());
    }
    return ClassExpr::named(head);
  }

  text::Cursor in_;
  std::size_t line_;
  Token tok_;
};

std::string quoted_value(const std::string& raw, std::size_t line) {
  auto s = text::trim(raw);
  if (s.size() < 2 || s.front() != '"' || s.back() != '"') throw ParseError("label must be a quoted string", line, 1);
  std::string out;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] == '\\' && i + 2 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

}  // namespace

ClassExpr parse_class_expr(std::string_view text) { return ExprParser(text, 1).parse(); }

GuidelineRule parse_guideline(std::string_view document) {
  struct Statement {
    std::string value;
    std::size_t line;
  };
  std::map<std::string, Statement> fields;
  std::string current;
  std::size_t line_no = 0;
  for (const auto& raw_line : text::split(document, '\n')) {
    ++line_no;
    auto trimmed = text::trim(raw_line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    bool continuation = std::isspace(static_cast<unsigned char>(raw_line.front()));
    if (continuation) {
      if (current.empty()) throw ParseError("continuation line without a statement", line_no, 1);
      fields[current].value += " " + std::string(trimmed);
      continue;
    }
    auto space = trimmed.find_first_of(" \t");
    std::string keyword = std::string(trimmed.substr(0, space));
    std::string value = space == std::string_view::npos ? "" : std::string(text::trim(trimmed.substr(space)));
    static const std::set<std::string> kKeywords = {"rule", "label", "population", "pattern", "fires",
                                                    "directive", "recommendation", "constraint"};
    if (!kKeywords.contains(keyword)) throw ParseError("unknown keyword '" + keyword + "'", line_no, 1);
    if (fields.contains(keyword)) throw ParseError("duplicate '" + keyword + "' statement", line_no, 1);
    fields[keyword] = Statement{value, line_no};
    current = keyword;
  }
  if (fields.empty()) throw ParseError("empty rule document", line_no ? line_no : 1, 1);
  for (const char* required : {"rule", "label", "population", "pattern", "fires", "directive",
                               "recommendation", "constraint"})
    if (!fields.contains(required))
      throw ParseError(std::string("missing '") + required + "' statement", line_no, 1);

  auto expr = [&](const char* key) { return ExprParser(fields[key].value, fields[key].line).parse(); };
  auto class_term = [&](const char* key) {
    ClassExpr e = expr(key);
    if (e.kind() != ClassExpr::Kind::Named)
      throw ParseError(std::string("'") + key + "' must name a single class", fields[key].line, 1);
    return e.term();
  };

  Polarity polarity;
  const std::string fires = text::to_lower(fields["fires"].value);
  if (fires == "on-match") {
    polarity = Polarity::DirectiveOnMatch;
  } else if (fires == "on-non-compliance") {
    polarity = Polarity::DirectiveOnNonCompliance;
  } else {
    throw ParseError("'fires' must be on-match or on-non-compliance", fields["fires"].line, 1);
  }

  return make_rule(fields["rule"].value, quoted_value(fields["label"].value, fields["label"].line),
                   expr("population"), expr("pattern"), polarity, class_term("directive"),
                   class_term("recommendation"), parse_payload(fields["constraint"].value));
}

// ---------------------------------------------------------------------------
// Match plans

namespace {

void emit(const ClassExpr& e, std::size_t depth, std::vector<PlanStep>& out) {
  const std::string x = "?x" + std::to_string(depth);
  const std::string y = "?x" + std::to_string(depth + 1);
  PlanStep step;
  step.subject_var = x;
  switch (e.kind()) {
    case ClassExpr::Kind::Named:
      step.op = PlanStep::Op::Scan;
      step.pattern = {std::nullopt, v::rdf_type, e.term()};
      break;
    case ClassExpr::Kind::HasValue:
      step.op = PlanStep::Op::Scan;
      step.pattern = {std::nullopt, e.term(), e.value()};
      break;
    case ClassExpr::Kind::Some:
    case ClassExpr::Kind::Only:
      if (!e.term().is_iri()) throw UnsupportedFeature("restriction over a non-IRI property");
      emit(e.filler(), depth + 1, out);
      step.op = e.kind() == ClassExpr::Kind::Some ? PlanStep::Op::Join : PlanStep::Op::Forall;
      step.pattern = {std::nullopt, e.term(), std::nullopt};
      step.object_var = y;
      break;
    case ClassExpr::Kind::And:
    case ClassExpr::Kind::Or:
      if (e.operands().empty()) throw UnsupportedFeature(std::string("empty '") + std::string(kind_name(e.kind())) + "'");
      for (const auto& op : e.operands()) emit(op, depth, out);
      step.op = e.kind() == ClassExpr::Kind::And ? PlanStep::Op::Intersect : PlanStep::Op::Union;
      step.arity = e.operands().size();
      break;
    case ClassExpr::Kind::Not:
      emit(e.filler(), depth, out);
      step.op = PlanStep::Op::Complement;
      break;
  }
  out.push_back(std::move(step));
}

}  // namespace

MatchPlan compile_condition(const ClassExpr& expr) {
  std::vector<PlanStep> steps;
  emit(expr, 0, steps);
  return MatchPlan(std::move(steps));
}

std::set<Term> MatchPlan::execute(const rdf::Graph& graph) const {
  std::vector<std::set<Term>> stack;
  std::optional<std::set<Term>> universe;
  auto resources = [&]() -> const std::set<Term>& {
    if (!universe) universe = graph.resources();
    return *universe;
  };
  auto pop = [&] {
    std::set<Term> top = std::move(stack.back());
    stack.pop_back();
    return top;
  };

  for (const auto& step : steps_) {
    switch (step.op) {
      case PlanStep::Op::Scan: {
        std::set<Term> out;
        for (const auto& t : graph.match(step.pattern)) out.insert(t.subject);
        stack.push_back(std::move(out));
        break;
      }
      case PlanStep::Op::Join: {
        std::set<Term> fillers = pop();
        std::set<Term> out;
        for (const auto& y : fillers)
          for (auto& x : graph.subjects(*step.pattern.predicate, y)) out.insert(std::move(x));
        stack.push_back(std::move(out));
        break;
      }
      case PlanStep::Op::Forall: {
        std::set<Term> fillers = pop();
        std::set<Term> out;
        for (const auto& x : resources()) {
          auto objects = graph.objects(x, *step.pattern.predicate);
          if (std::all_of(objects.begin(), objects.end(), [&](const Term& y) { return fillers.contains(y); }))
            out.insert(x);
        }
        stack.push_back(std::move(out));
        break;
      }
      case PlanStep::Op::Intersect:
      case PlanStep::Op::Union: {
        std::set<Term> acc = pop();
        for (std::size_t i = 1; i < step.arity; ++i) {
          std::set<Term> other = pop();
          std::set<Term> merged;
          if (step.op == PlanStep::Op::Intersect) {
            std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                                  std::inserter(merged, merged.end()));
          } else {
            std::set_union(acc.begin(), acc.end(), other.begin(), other.end(),
                           std::inserter(merged, merged.end()));
          }
          acc = std::move(merged);
        }
        stack.push_back(std::move(acc));
        break;
      }
      case PlanStep::Op::Complement: {
        std::set<Term> operand = pop();
        std::set<Term> out;
        std::set_difference(resources().begin(), resources().end(), operand.begin(), operand.end(),
                            std::inserter(out, out.end()));
        stack.push_back(std::move(out));
        break;
      }
    }
  }
  return stack.empty() ? std::set<Term>{} : std::move(stack.back());
}

std::string MatchPlan::describe(const rdf::PrefixMap& prefixes) const {
  std::string out;
  auto slot = [&](const std::optional<Term>& t, const std::string& var) {
    return t ? abbreviate(*t, prefixes) : var;
  };
  for (const auto& s : steps_) {
    switch (s.op) {
      case PlanStep::Op::Scan:
        out += "scan (" + s.subject_var + " " + slot(s.pattern.predicate, "?p") + " " +
               slot(s.pattern.object, "?o") + ")\n";
        break;
      case PlanStep::Op::Join:
      case PlanStep::Op::Forall:
        out += std::string(s.op == PlanStep::Op::Join ? "join" : "forall") + " (" + s.subject_var + " " +
               slot(s.pattern.predicate, "?p") + " " + s.object_var + ")\n";
        break;
      case PlanStep::Op::Intersect: out += "intersect " + std::to_string(s.arity) + "\n"; break;
      case PlanStep::Op::Union: out += "union " + std::to_string(s.arity) + "\n"; break;
      case PlanStep::Op::Complement: out += "complement\n"; break;
    }
  }
  return out;
}

}  // namespace phkg::guidelines
