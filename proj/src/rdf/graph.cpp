#include "phkg/rdf/graph.hpp"

#include <algorithm>
#include <tuple>

#include "phkg/error.hpp"
#include "phkg/vocab.hpp"

namespace phkg::rdf {

void Triple::validate() const {
  if (subject.is_literal()) throw ValidationError("triple subject is a literal: " + subject.to_string());
  if (!predicate.is_iri()) throw ValidationError("triple predicate is not an IRI: " + predicate.to_string());
}

std::ostream& operator<<(std::ostream& os, const Triple& t) {
  return os << t.subject << ' ' << t.predicate << ' ' << t.object << " .";
}

bool TriplePattern::matches(const Triple& t) const {
  return (!subject || *subject == t.subject) && (!predicate || *predicate == t.predicate) &&
         (!object || *object == t.object);
}

const PrefixMap& standard_prefixes() {
  static const PrefixMap prefixes = {
      {"", std::string(kDefaultUserNs)},
      {"doid", std::string(vocab::ns::doid)},
      {"dron", std::string(vocab::ns::dron)},
      {"food", std::string(vocab::ns::food)},
      {"pho", std::string(vocab::ns::pho)},
      {"prov", std::string(vocab::ns::prov)},
      {"rdf", std::string(vocab::ns::rdf)},
      {"rdfs", std::string(vocab::ns::rdfs)},
      {"sio", std::string(vocab::ns::sio)},
      {"stato", std::string(vocab::ns::stato)},
      {"xsd", std::string(vocab::ns::xsd)},
  };
  return prefixes;
}

bool Graph::PosLess::operator()(const Triple& a, const Triple& b) const {
  return std::tie(a.predicate, a.object, a.subject) < std::tie(b.predicate, b.object, b.subject);
}

bool Graph::OspLess::operator()(const Triple& a, const Triple& b) const {
  return std::tie(a.object, a.subject, a.predicate) < std::tie(b.object, b.subject, b.predicate);
}

Graph::Graph() : prefixes_(standard_prefixes()) {}

Graph::Graph(PrefixMap prefixes) : prefixes_(standard_prefixes()) {
  for (auto& [k, v] : prefixes) prefixes_[k] = v;
}

bool Graph::insert(const Triple& triple) {
  triple.validate();
  if (!spo_.insert(triple).second) return false;
  pos_.insert(triple);
  osp_.insert(triple);
  return true;
}

bool Graph::insert(Term subject, Term predicate, Term object) {
  return insert(Triple{std::move(subject), std::move(predicate), std::move(object)});
}

bool Graph::erase(const Triple& triple) {
  if (spo_.erase(triple) == 0) return false;
  pos_.erase(triple);
  osp_.erase(triple);
  return true;
}

void Graph::insert_all(const Graph& other) {
  for (const auto& t : other.spo_) insert(t);
}

std::vector<Triple> Graph::match(const TriplePattern& p) const {
  std::vector<Triple> out;
  // A default Term is the minimum of the term order, so it serves as the
  // lower bound for unbound trailing slots.
  if (p.subject) {
    auto it = spo_.lower_bound(Triple{*p.subject, p.predicate.value_or(Term{}), Term{}});
    for (; it != spo_.end() && it->subject == *p.subject; ++it) {
      if (p.predicate && it->predicate != *p.predicate) break;
      if (p.matches(*it)) out.push_back(*it);
    }
    return out;
  }
  if (p.predicate) {
    for (auto it = pos_.lower_bound(Triple{Term{}, *p.predicate, Term{}});
         it != pos_.end() && it->predicate == *p.predicate; ++it)
      if (p.matches(*it)) out.push_back(*it);
  } else if (p.object) {
    for (auto it = osp_.lower_bound(Triple{Term{}, Term{}, *p.object});
         it != osp_.end() && it->object == *p.object; ++it)
      out.push_back(*it);
  } else {
    out.assign(spo_.begin(), spo_.end());
    return out;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Term> Graph::objects(const Term& subject, const Term& predicate) const {
  std::vector<Term> out;
  for (auto& t : match({subject, predicate, std::nullopt})) out.push_back(t.object);
  return out;
}

std::vector<Term> Graph::subjects(const Term& predicate, const Term& object) const {
  std::vector<Term> out;
  for (auto& t : match({std::nullopt, predicate, object})) out.push_back(t.subject);
  return out;
}

std::optional<Term> Graph::first_object(const Term& subject, const Term& predicate) const {
  auto it = spo_.lower_bound(Triple{subject, predicate, Term{}});
  if (it != spo_.end() && it->subject == subject && it->predicate == predicate) return it->object;
  return std::nullopt;
}

std::set<Term> Graph::resources() const {
  std::set<Term> out;
  for (const auto& t : spo_) {
    out.insert(t.subject);
    if (t.object.is_resource()) out.insert(t.object);
  }
  return out;
}

}  // namespace phkg::rdf
