#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace phkg::rdf {

inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kRdfNs =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";

std::string xsd(std::string_view local);

/// An RDF term. Equality is structural: kind, value, datatype and language
/// must all match, so "1.0"^^xsd:float and "1.00"^^xsd:float differ.
class Term {
 public:
  enum class Kind : unsigned char { Iri, BlankNode, Literal };

  Term() = default;

  /// Throws ValidationError unless `iri` has a scheme (`scheme:`).
  static Term iri(std::string iri);
  static Term blank(std::string label);
  /// Literal with datatype; an empty datatype means xsd:string.
  static Term literal(std::string lexical, std::string datatype = {});
  static Term lang_literal(std::string lexical, std::string language);

  static Term boolean(bool value);
  static Term integer(long long value);

  Kind kind() const { return kind_; }
  bool is_iri() const { return kind_ == Kind::Iri; }
  bool is_blank() const { return kind_ == Kind::BlankNode; }
  bool is_literal() const { return kind_ == Kind::Literal; }
  /// IRI or blank node, i.e. something that can be a triple subject.
  bool is_resource() const { return kind_ != Kind::Literal; }

  /// IRI string, blank node label, or literal lexical form.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  bool is_numeric() const;
  /// Numeric value of a numeric-datatype literal.
  std::optional<double> numeric_value() const;

  /// N-Triples style rendering, used in diagnostics and TSV output.
  std::string to_string() const;

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

 private:
  Term(Kind kind, std::string value, std::string datatype, std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  Kind kind_ = Kind::Iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

std::ostream& operator<<(std::ostream& os, const Term& term);

bool is_absolute_iri(std::string_view iri);

/// Shortest decimal string that parses back to exactly `value`, always with
/// a fractional part or exponent ("1.0", "0.99", "2.5e-07").
std::string canonical_double(double value);
/// Same, for single precision: 0.99f gives "0.99".
std::string canonical_float(float value);

/// Compact decimal for human-facing text: "30", "37.5".
std::string compact_number(double value);

}  // namespace phkg::rdf
