#pragma once

// A SPARQL SELECT subset: PREFIX declarations, one basic graph pattern with
// FILTER comparisons, and LIMIT. Results use set semantics and a fixed row
// order so they can be compared byte for byte.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phkg/rdf/graph.hpp"

namespace phkg::query {

using rdf::Term;

/// A triple-pattern slot: either a variable name (without `?`) or a term.
struct Slot {
  std::optional<Term> term;
  std::string var;

  static Slot variable(std::string name) { return Slot{std::nullopt, std::move(name)}; }
  static Slot constant(Term t) { return Slot{std::move(t), {}}; }
  bool is_var() const { return !term.has_value(); }
  bool operator==(const Slot&) const = default;
};

struct QueryPattern {
  Slot subject;
  Slot predicate;
  Slot object;
  bool operator==(const QueryPattern&) const = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view compare_op_symbol(CompareOp op);

/// `lhs op rhs`. Ordering operators hold only between numeric literals.
/// `=` and `!=` compare numerically when both sides are numeric literals and
/// by term identity otherwise.
struct Filter {
  Slot lhs;
  CompareOp op = CompareOp::Eq;
  Slot rhs;
  bool operator==(const Filter&) const = default;
};

/// Evaluates one comparison between two bound terms.
bool compare_terms(const Term& lhs, CompareOp op, const Term& rhs);

struct Query {
  rdf::PrefixMap prefixes;
  /// Variable names; empty only for `SELECT *` over a pattern without
  /// variables, which yields at most one empty row.
  std::vector<std::string> select;
  std::vector<QueryPattern> patterns;
  std::vector<Filter> filters;
  std::optional<std::size_t> limit;
  bool distinct = false;  // accepted; results are always distinct
};

/// Parses query text. Throws ParseError (with position) for syntax errors,
/// UnsupportedFeature for constructs outside the subset (OPTIONAL, UNION,
/// subqueries, ...) and ValidationError for a selected or filtered variable
/// that does not occur in the pattern. The standard prefixes are predeclared.
Query parse_query(std::string_view text);

struct BindingTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Term>> rows;

  /// Tab-separated: a header of `?name` columns, then one line per row with
  /// terms in N-Triples form.
  std::string to_tsv() const;
  bool operator==(const BindingTable&) const = default;
};

/// Row order used by `execute`: column-wise by N-Triples rendering.
bool row_less(const std::vector<Term>& a, const std::vector<Term>& b);

/// Evaluates the basic graph pattern, applies filters, projects onto the
/// select list, removes duplicates, sorts with `row_less` and applies LIMIT.
BindingTable execute(const rdf::Graph& graph, const Query& query);

}  // namespace phkg::query
