#include "phkg/rdf/term.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "phkg/error.hpp"

namespace phkg::rdf {

std::string xsd(std::string_view local) {
  std::string out(kXsdNs);
  out += local;
  return out;
}

bool is_absolute_iri(std::string_view iri) {
  auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(iri[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = iri[i];
    if (!(alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.')) return false;
  }
  return true;
}

Term Term::iri(std::string iri) {
  if (!is_absolute_iri(iri)) throw ValidationError("IRI is not absolute: '" + iri + "'");
  return Term(Kind::Iri, std::move(iri), {}, {});
}

Term Term::blank(std::string label) {
  if (label.empty()) throw ValidationError("blank node label is empty");
  return Term(Kind::BlankNode, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype) {
  if (datatype.empty()) datatype = xsd("string");
  return Term(Kind::Literal, std::move(lexical), std::move(datatype), {});
}

Term Term::lang_literal(std::string lexical, std::string language) {
  if (language.empty()) return literal(std::move(lexical));
  for (auto& c : language) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return Term(Kind::Literal, std::move(lexical), std::string(kRdfNs) + "langString",
              std::move(language));
}

Term Term::boolean(bool value) { return literal(value ? "true" : "false", xsd("boolean")); }

Term Term::integer(long long value) { return literal(std::to_string(value), xsd("integer")); }

namespace {

constexpr std::array kNumericTypes = {
    "integer", "decimal", "float", "double", "int", "long", "short", "byte",
    "nonNegativeInteger", "positiveInteger", "negativeInteger", "nonPositiveInteger",
    "unsignedInt", "unsignedLong", "unsignedShort", "unsignedByte"};

}  // namespace

bool Term::is_numeric() const {
  if (kind_ != Kind::Literal) return false;
  if (!datatype_.starts_with(kXsdNs)) return false;
  std::string_view local = std::string_view(datatype_).substr(kXsdNs.size());
  for (auto* t : kNumericTypes)
    if (local == t) return true;
  return false;
}

std::optional<double> Term::numeric_value() const {
  if (!is_numeric()) return std::nullopt;
  const char* begin = value_.data();
  const char* end = begin + value_.size();
  if (begin != end && *begin == '+') ++begin;
  double out = 0;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    if (value_ == "INF") return HUGE_VAL;
    if (value_ == "-INF") return -HUGE_VAL;
    return std::nullopt;
  }
  return out;
}

namespace {

std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string Term::to_string() const {
  switch (kind_) {
    case Kind::Iri: return "<" + value_ + ">";
    case Kind::BlankNode: return "_:" + value_;
    case Kind::Literal: {
      std::string out = "\"" + escape_literal(value_) + "\"";
      if (!language_.empty()) return out + "@" + language_;
      if (datatype_ == xsd("string")) return out;
      return out + "^^<" + datatype_ + ">";
    }
  }
  return {};
}

std::ostream& operator<<(std::ostream& os, const Term& term) { return os << term.to_string(); }

namespace {

template <typename T>
std::string shortest(T value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "INF" : "-INF";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string out(buf.data(), ptr);
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

}  // namespace

std::string canonical_double(double value) { return shortest(value); }

std::string canonical_float(float value) { return shortest(value); }

std::string compact_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

}  // namespace phkg::rdf
