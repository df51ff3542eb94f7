#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phkg/rdf/term.hpp"

namespace phkg::rdf {

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  /// Throws ValidationError for a literal subject or a non-IRI predicate.
  void validate() const;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Triple& triple);

/// One slot per position; an empty slot matches anything.
struct TriplePattern {
  std::optional<Term> subject;
  std::optional<Term> predicate;
  std::optional<Term> object;

  bool matches(const Triple& triple) const;
};

using PrefixMap = std::map<std::string, std::string>;

/// Namespace for user-scoped nodes when no other is configured; bound to the
/// empty prefix.
inline constexpr std::string_view kDefaultUserNs = "https://w3id.org/pho-example/user/";

/// The prefix block every graph starts with.
const PrefixMap& standard_prefixes();

/// In-memory triple store with set semantics.
///
/// Triples are kept in three sorted indexes (SPO, POS, OSP) so that any
/// pattern with at least one bound slot is answered by a range scan. Const
/// member functions may be called concurrently; mutation needs exclusive
/// access.
class Graph {
 public:
  Graph();
  explicit Graph(PrefixMap prefixes);

  /// Returns true if the triple was not already present.
  bool insert(const Triple& triple);
  bool insert(Term subject, Term predicate, Term object);
  bool erase(const Triple& triple);
  void insert_all(const Graph& other);

  bool contains(const Triple& triple) const { return spo_.contains(triple); }
  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  /// Matching triples in (subject, predicate, object) order.
  std::vector<Triple> match(const TriplePattern& pattern) const;

  /// Objects of (subject, predicate, ?), sorted.
  std::vector<Term> objects(const Term& subject, const Term& predicate) const;
  /// Subjects of (?, predicate, object), sorted.
  std::vector<Term> subjects(const Term& predicate, const Term& object) const;
  std::optional<Term> first_object(const Term& subject, const Term& predicate) const;

  /// Every IRI or blank node appearing as subject or object.
  std::set<Term> resources() const;

  const std::set<Triple>& triples() const { return spo_; }

  const PrefixMap& prefixes() const { return prefixes_; }
  void set_prefix(const std::string& prefix, const std::string& ns) {
    prefixes_[prefix] = ns;
  }

  /// Triple-set equality; prefix maps are presentation only.
  friend bool operator==(const Graph& a, const Graph& b) { return a.spo_ == b.spo_; }

 private:
  struct PosLess {
    bool operator()(const Triple& a, const Triple& b) const;
  };
  struct OspLess {
    bool operator()(const Triple& a, const Triple& b) const;
  };

  std::set<Triple> spo_;
  std::set<Triple, PosLess> pos_;
  std::set<Triple, OspLess> osp_;
  PrefixMap prefixes_;
};

}  // namespace phkg::rdf
