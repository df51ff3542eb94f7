#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <set>

#include "phkg/vocab.hpp"

namespace oracle {

using phkg::guidelines::ClassExpr;
namespace q = phkg::query;

double two_pass_cv(std::span<const double> xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size())) / mean;
}

namespace {

bool member(const Term& x, const ClassExpr& e, const Graph& g, const std::set<Term>& domain) {
  if (!domain.contains(x)) return false;
  switch (e.kind()) {
    case ClassExpr::Kind::Named:
      return g.contains({x, phkg::vocab::rdf_type, e.term()});
    case ClassExpr::Kind::HasValue:
      return g.contains({x, e.term(), e.value()});
    case ClassExpr::Kind::And:
      for (const auto& op : e.operands())
        if (!member(x, op, g, domain)) return false;
      return true;
    case ClassExpr::Kind::Or:
      for (const auto& op : e.operands())
        if (member(x, op, g, domain)) return true;
      return false;
    case ClassExpr::Kind::Not:
      return !member(x, e.filler(), g, domain);
    case ClassExpr::Kind::Some:
      for (const auto& t : g.triples())
        if (t.subject == x && t.predicate == e.term() && member(t.object, e.filler(), g, domain)) return true;
      return false;
    case ClassExpr::Kind::Only:
      for (const auto& t : g.triples())
        if (t.subject == x && t.predicate == e.term() && !member(t.object, e.filler(), g, domain)) return false;
      return true;
  }
  return false;
}

}  // namespace

std::set<Term> class_extension(const ClassExpr& expr, const Graph& g) {
  std::set<Term> domain;
  for (const auto& t : g.triples()) {
    domain.insert(t.subject);
    if (!t.object.is_literal()) domain.insert(t.object);
  }
  std::set<Term> out;
  for (const auto& x : domain)
    if (member(x, expr, g, domain)) out.insert(x);
  return out;
}

namespace {

std::optional<double> number(const Term& t) {
  if (!t.is_literal()) return std::nullopt;
  static const std::set<std::string> numeric = {
      "integer", "decimal", "double", "float", "int", "long", "short", "byte",
      "nonNegativeInteger", "positiveInteger", "negativeInteger", "nonPositiveInteger",
      "unsignedInt", "unsignedLong", "unsignedShort", "unsignedByte"};
  const std::string xsd = "http://www.w3.org/2001/XMLSchema#";
  if (!t.datatype().starts_with(xsd) || !numeric.contains(t.datatype().substr(xsd.size()))) return std::nullopt;
  try {
    std::size_t used = 0;
    double d = std::stod(t.value(), &used);
    if (used != t.value().size()) return std::nullopt;
    return d;
  } catch (...) {
    return std::nullopt;
  }
}

bool holds(const Term& a, q::CompareOp op, const Term& b) {
  auto x = number(a), y = number(b);
  if (x && y) {
    switch (op) {
      case q::CompareOp::Eq: return *x == *y;
      case q::CompareOp::Ne: return *x != *y;
      case q::CompareOp::Lt: return *x < *y;
      case q::CompareOp::Le: return *x <= *y;
      case q::CompareOp::Gt: return *x > *y;
      case q::CompareOp::Ge: return *x >= *y;
    }
  }
  if (op == q::CompareOp::Eq) return a == b;
  if (op == q::CompareOp::Ne) return !(a == b);
  return false;
}

}  // namespace

q::BindingTable enumerate_query(const Graph& g, const q::Query& query) {
  std::vector<std::string> vars;
  auto note = [&](const q::Slot& s) {
    if (s.is_var() && std::find(vars.begin(), vars.end(), s.var) == vars.end()) vars.push_back(s.var);
  };
  for (const auto& p : query.patterns) {
    note(p.subject);
    note(p.predicate);
    note(p.object);
  }
  std::set<Term> pool;
  for (const auto& t : g.triples()) {
    pool.insert(t.subject);
    pool.insert(t.predicate);
    pool.insert(t.object);
  }
  std::vector<Term> values(pool.begin(), pool.end());

  std::map<std::string, Term> assignment;
  auto value_of = [&](const q::Slot& s) { return s.is_var() ? assignment.at(s.var) : *s.term; };
  std::set<std::vector<std::string>> seen;
  std::vector<std::pair<std::vector<std::string>, std::vector<Term>>> rows;

  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == vars.size()) {
      for (const auto& p : query.patterns)
        if (!g.contains({value_of(p.subject), value_of(p.predicate), value_of(p.object)})) return;
      for (const auto& f : query.filters)
        if (!holds(value_of(f.lhs), f.op, value_of(f.rhs))) return;
      std::vector<std::string> key;
      std::vector<Term> row;
      for (const auto& v : query.select) {
        row.push_back(assignment.at(v));
        key.push_back(assignment.at(v).to_string());
      }
      if (seen.insert(key).second) rows.emplace_back(key, row);
      return;
    }
    for (const auto& v : values) {
      assignment.insert_or_assign(vars[i], v);
      assign(i + 1);
    }
    assignment.erase(vars[i]);
  };
  if (!g.empty()) assign(0);

  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  q::BindingTable table;
  table.columns = query.select;
  for (auto& [key, row] : rows) {
    if (query.limit && table.rows.size() >= *query.limit) break;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::optional<std::map<Term, Term>> embed(const Graph& pattern, const Graph& target) {
  const std::string ns(phkg::rdf::kDefaultUserNs);
  auto is_var = [&](const Term& t) { return t.is_iri() && t.value().starts_with(ns); };
  std::vector<phkg::rdf::Triple> todo(pattern.triples().begin(), pattern.triples().end());
  std::map<Term, Term> binding;
  std::set<Term> used;

  std::function<bool(std::size_t)> step = [&](std::size_t i) -> bool {
    if (i == todo.size()) return true;
    const auto& t = todo[i];
    for (const auto& cand : target.triples()) {
      std::vector<Term> fresh;
      bool ok = true;
      auto unify = [&](const Term& p, const Term& c) {
        if (!ok) return;
        if (!is_var(p)) {
          ok = p == c;
          return;
        }
        auto it = binding.find(p);
        if (it != binding.end()) {
          ok = it->second == c;
          return;
        }
        if (c.is_literal() || used.contains(c)) {
          ok = false;
          return;
        }
        binding[p] = c;
        used.insert(c);
        fresh.push_back(p);
      };
      unify(t.subject, cand.subject);
      unify(t.predicate, cand.predicate);
      unify(t.object, cand.object);
      if (ok && step(i + 1)) return true;
      for (const auto& p : fresh) {
        used.erase(binding[p]);
        binding.erase(p);
      }
    }
    return false;
  };
  if (!step(0)) return std::nullopt;
  return binding;
}

namespace {

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool contains_words(const std::string& haystack, const std::string& needle) {
  auto h = words(haystack), n = words(needle);
  if (n.empty() || n.size() > h.size()) return false;
  for (std::size_t i = 0; i + n.size() <= h.size(); ++i)
    if (std::equal(n.begin(), n.end(), h.begin() + static_cast<long>(i))) return true;
  return false;
}

bool any_contains(const std::set<std::string>& items, const std::string& needle) {
  for (const auto& s : items)
    if (contains_words(s, needle)) return true;
  return false;
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

bool recipe_admissible(const phkg::recommend::Recipe& r, const phkg::reasoner::ConstraintSet& cs,
                       std::optional<phkg::MealType> meal) {
  if (meal && !r.meal_types.contains(*meal)) return false;
  for (const auto& c : cs.constraints) {
    if (const auto* n = std::get_if<phkg::guidelines::NutrientConstraint>(&c.payload)) {
      if (n->nutrient == phkg::Nutrient::Carbohydrates &&
          (r.carbohydrates_g < n->per_meal_lower || r.carbohydrates_g > n->per_meal_upper))
        return false;
    } else {
      const auto& tag = std::get<phkg::guidelines::TagConstraint>(c.payload).tag;
      bool found = false;
      for (const auto& t : r.tags) found = found || lower(t) == lower(tag);
      if (!found) return false;
    }
  }
  for (const auto& a : cs.allergies)
    if (any_contains(r.allergens, a) || any_contains(r.ingredients, a)) return false;
  for (const auto& d : cs.dislikes)
    if (any_contains(r.ingredients, d)) return false;
  return true;
}

}  // namespace oracle
