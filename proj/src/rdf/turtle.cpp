#include "phkg/rdf/turtle.hpp"

#include <cctype>
#include <sstream>

#include "phkg/error.hpp"
#include "phkg/text.hpp"

namespace phkg::rdf {

namespace {

bool is_pn_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || u >= 0x80;
}

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : in_(text) {}

  Graph run() {
    skip_ws();
    while (!in_.at_end()) {
      if (in_.peek() == '@') {
        directive_at();
      } else if (in_.starts_with_keyword("PREFIX")) {
        in_.advance(6);
        prefix_body(false);
      } else if (in_.starts_with_keyword("BASE") || in_.starts_with_keyword("@base")) {
        fail("base IRIs are not supported");
      } else {
        triples();
        skip_ws();
        expect('.');
      }
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, in_.line(), in_.column());
  }

  void skip_ws() { in_.skip_ws_and_comments('#'); }

  void expect(char c) {
    if (in_.at_end() || in_.peek() != c) {
      if (in_.at_end()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "' but found '" + in_.peek() + "'");
    }
    in_.advance();
  }

  void directive_at() {
    if (in_.starts_with_keyword("@prefix")) {
      in_.advance(7);
      prefix_body(true);
      return;
    }
    fail("unknown directive");
  }

  void prefix_body(bool needs_dot) {
    skip_ws();
    std::string prefix;
    while (!in_.at_end() && is_pn_char(in_.peek())) prefix += in_.get();
    expect(':');
    skip_ws();
    std::string ns = iri_ref();
    graph_.set_prefix(prefix, ns);
    declared_[prefix] = ns;
    if (needs_dot) {
      skip_ws();
      expect('.');
    }
  }

  std::string iri_ref() {
    expect('<');
    std::string out;
    while (true) {
      if (in_.at_end()) fail("unterminated IRI");
      char c = in_.get();
      if (c == '>') break;
      if (c == ' ' || c == '\n' || c == '"' || c == '<') fail("invalid character in IRI");
      if (c == '\\') {
        out += unicode_escape();
        continue;
      }
      out += c;
    }
    if (!is_absolute_iri(out)) fail("relative IRI <" + out + "> (no base IRI support)");
    return out;
  }

  std::string unicode_escape() {
    if (in_.at_end()) fail("dangling escape");
    char kind = in_.get();
    int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail(std::string("invalid escape '\\") + kind + "'");
    unsigned long cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (in_.at_end() || !std::isxdigit(static_cast<unsigned char>(in_.peek())))
        fail("invalid unicode escape");
      cp = cp * 16 + static_cast<unsigned long>(std::stoi(std::string(1, in_.get()), nullptr, 16));
    }
    return text::utf8_encode(static_cast<char32_t>(cp));
  }

  Term prefixed_name() {
    std::string prefix;
    while (!in_.at_end() && is_pn_char(in_.peek())) prefix += in_.get();
    if (in_.at_end() || in_.peek() != ':') fail("expected prefixed name, found '" + prefix + "'");
    in_.advance();
    std::string local;
    while (!in_.at_end()) {
      char c = in_.peek();
      if (is_pn_char(c) || c == ':') {
        local += in_.get();
      } else if (c == '.' && in_.peek(1) != '\0' &&
                 (is_pn_char(in_.peek(1)) || in_.peek(1) == ':')) {
        local += in_.get();
      } else if (c == '\\') {
        in_.advance();
        if (in_.at_end()) fail("dangling escape in local name");
        local += in_.get();
      } else {
        break;
      }
    }
    auto it = declared_.find(prefix);
    if (it == declared_.end()) {
      throw ResolutionError("unknown prefix '" + prefix + ":' at line " + std::to_string(in_.line()));
    }
    return Term::iri(it->second + local);
  }

  Term iri() {
    if (in_.peek() == '<') return Term::iri(iri_ref());
    return prefixed_name();
  }

  Term blank_node() {
    in_.advance(2);  // "_:"
    std::string label;
    while (!in_.at_end() && (is_pn_char(in_.peek()) ||
                             (in_.peek() == '.' && is_pn_char(in_.peek(1)))))
      label += in_.get();
    if (label.empty()) fail("empty blank node label");
    return Term::blank(label);
  }

  Term subject() {
    if (in_.at_end()) fail("expected subject");
    if (in_.peek() == '_' && in_.peek(1) == ':') return blank_node();
    if (in_.peek() == '[') fail("anonymous blank nodes are not supported");
    if (in_.peek() == '(') fail("collections are not supported");
    if (in_.peek() == '"' || in_.peek() == '\'' || std::isdigit(static_cast<unsigned char>(in_.peek())))
      fail("literal in subject position");
    return iri();
  }

  Term verb() {
    if (in_.at_end()) fail("expected predicate");
    if (in_.peek() == 'a' && !is_pn_char(in_.peek(1)) && in_.peek(1) != ':') {
      in_.advance();
      return Term::iri(std::string(kRdfNs) + "type");
    }
    if (in_.peek() == '_' && in_.peek(1) == ':') fail("blank node in predicate position");
    if (in_.peek() == '"' || in_.peek() == '\'') fail("literal in predicate position");
    return iri();
  }

  std::string quoted_string() {
    char quote = in_.get();
    if (in_.peek() == quote && in_.peek(1) == quote) fail("long string literals are not supported");
    std::string out;
    while (true) {
      if (in_.at_end()) fail("unterminated string literal");
      if (in_.peek() == '\n') fail("newline in string literal");
      char c = in_.get();
      if (c == quote) break;
      if (c == '\\') {
        if (in_.at_end()) fail("dangling escape");
        char e = in_.peek();
        switch (e) {
          case 't': out += '\t'; in_.advance(); break;
          case 'n': out += '\n'; in_.advance(); break;
          case 'r': out += '\r'; in_.advance(); break;
          case 'b': out += '\b'; in_.advance(); break;
          case 'f': out += '\f'; in_.advance(); break;
          case '"': out += '"'; in_.advance(); break;
          case '\'': out += '\''; in_.advance(); break;
          case '\\': out += '\\'; in_.advance(); break;
          default: out += unicode_escape();
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  Term literal_from_string() {
    std::string lexical = quoted_string();
    if (!in_.at_end() && in_.peek() == '@') {
      in_.advance();
      std::string lang;
      while (!in_.at_end() &&
             (std::isalnum(static_cast<unsigned char>(in_.peek())) || in_.peek() == '-'))
        lang += in_.get();
      if (lang.empty()) fail("empty language tag");
      return Term::lang_literal(std::move(lexical), std::move(lang));
    }
    if (in_.peek() == '^' && in_.peek(1) == '^') {
      in_.advance(2);
      Term dt = iri();
      return Term::literal(std::move(lexical), dt.value());
    }
    return Term::literal(std::move(lexical));
  }

  Term numeric_literal() {
    std::string lex;
    if (in_.peek() == '+' || in_.peek() == '-') lex += in_.get();
    auto digits = [&] {
      std::size_t n = 0;
      while (!in_.at_end() && std::isdigit(static_cast<unsigned char>(in_.peek()))) {
        lex += in_.get();
        ++n;
      }
      return n;
    };
    std::size_t int_digits = digits();
    bool decimal = false;
    if (in_.peek() == '.' && std::isdigit(static_cast<unsigned char>(in_.peek(1)))) {
      lex += in_.get();
      digits();
      decimal = true;
    } else if (int_digits == 0) {
      fail("malformed number");
    }
    if (in_.peek() == 'e' || in_.peek() == 'E') {
      lex += in_.get();
      if (in_.peek() == '+' || in_.peek() == '-') lex += in_.get();
      if (digits() == 0) fail("malformed exponent");
      return Term::literal(lex, xsd("double"));
    }
    return Term::literal(lex, xsd(decimal ? "decimal" : "integer"));
  }

  Term object() {
    if (in_.at_end()) fail("expected object");
    char c = in_.peek();
    if (c == '"' || c == '\'') return literal_from_string();
    if (c == '_' && in_.peek(1) == ':') return blank_node();
    if (c == '[') fail("anonymous blank nodes are not supported");
    if (c == '(') fail("collections are not supported");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(in_.peek(1)))))
      return numeric_literal();
    if (in_.starts_with_keyword("true") && !is_pn_char(in_.peek(4)) && in_.peek(4) != ':') {
      in_.advance(4);
      return Term::boolean(true);
    }
    if (in_.starts_with_keyword("false") && !is_pn_char(in_.peek(5)) && in_.peek(5) != ':') {
      in_.advance(5);
      return Term::boolean(false);
    }
    return iri();
  }

  void triples() {
    Term s = subject();
    skip_ws();
    while (true) {
      Term p = verb();
      skip_ws();
      while (true) {
        Term o = object();
        graph_.insert(Triple{s, p, std::move(o)});
        skip_ws();
        if (!in_.at_end() && in_.peek() == ',') {
          in_.advance();
          skip_ws();
          continue;
        }
        break;
      }
      if (!in_.at_end() && in_.peek() == ';') {
        while (!in_.at_end() && in_.peek() == ';') {
          in_.advance();
          skip_ws();
        }
        if (!in_.at_end() && in_.peek() == '.') return;
        continue;
      }
      return;
    }
  }

  text::Cursor in_;
  Graph graph_;
  PrefixMap declared_;
};

bool simple_local(std::string_view local) {
  if (local.empty()) return true;
  for (char c : local)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return local.front() != '-';
}

std::string escape_string(const std::string& s) {
  std::string out;
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

class TurtleWriter {
 public:
  explicit TurtleWriter(const PrefixMap& prefixes) : prefixes_(prefixes) {}

  std::string iri(const std::string& value) const {
    const std::pair<const std::string, std::string>* best = nullptr;
    for (const auto& entry : prefixes_) {
      if (value.size() >= entry.second.size() && value.starts_with(entry.second) &&
          simple_local(std::string_view(value).substr(entry.second.size()))) {
        if (!best || entry.second.size() > best->second.size()) best = &entry;
      }
    }
    if (best) return best->first + ":" + value.substr(best->second.size());
    return "<" + value + ">";
  }

  std::string term(const Term& t) const {
    switch (t.kind()) {
      case Term::Kind::Iri: return iri(t.value());
      case Term::Kind::BlankNode: return "_:" + t.value();
      case Term::Kind::Literal: {
        std::string out = "\"" + escape_string(t.value()) + "\"";
        if (!t.language().empty()) return out + "@" + t.language();
        if (t.datatype() == xsd("string")) return out;
        return out + "^^" + iri(t.datatype());
      }
    }
    return {};
  }

 private:
  const PrefixMap& prefixes_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return TurtleParser(text).run(); }

std::string serialize_turtle(const Graph& graph) {
  std::ostringstream out;
  for (const auto& [prefix, ns] : graph.prefixes())
    out << "@prefix " << prefix << ": <" << ns << "> .\n";

  TurtleWriter writer(graph.prefixes());
  const std::string rdf_type = std::string(kRdfNs) + "type";
  const Term* subject = nullptr;
  const Term* predicate = nullptr;
  for (const auto& t : graph.triples()) {
    if (!subject || *subject != t.subject) {
      if (subject) out << " .\n";
      out << "\n" << writer.term(t.subject) << "\n    ";
      subject = &t.subject;
      predicate = nullptr;
    }
    if (!predicate || *predicate != t.predicate) {
      if (predicate) out << " ;\n    ";
      out << (t.predicate.value() == rdf_type ? std::string("a") : writer.term(t.predicate)) << ' ';
      predicate = &t.predicate;
    } else {
      out << ", ";
    }
    out << writer.term(t.object);
  }
  if (subject) out << " .\n";
  return out.str();
}

}  // namespace phkg::rdf
