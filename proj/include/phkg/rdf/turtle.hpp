#pragma once

#include <string>
#include <string_view>

#include "phkg/rdf/graph.hpp"

namespace phkg::rdf {

/// Parses the Turtle subset used throughout the project: `@prefix` and
/// `PREFIX` directives, `<iri>` and prefixed names, the `a` keyword,
/// `;`/`,` predicate-object lists, quoted literals with `^^` datatypes or
/// `@lang` tags, bare integer/decimal/double/boolean literals, `_:label`
/// blank nodes and `#` comments.
///
/// Throws ParseError (with line/column) on malformed input and
/// ResolutionError on an undeclared prefix. Declared prefixes are added to
/// the returned graph's prefix map.
Graph parse_turtle(std::string_view text);

/// Writes the graph as Turtle: a prefix block sorted by prefix, then one
/// subject block per subject in sorted order. IRIs are abbreviated when the
/// local part is a plain name.
std::string serialize_turtle(const Graph& graph);

}  // namespace phkg::rdf
