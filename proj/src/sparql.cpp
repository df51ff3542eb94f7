#include "phkg/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "phkg/error.hpp"
#include "phkg/text.hpp"

namespace phkg::query {

std::string_view compare_op_symbol(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

bool compare_terms(const Term& lhs, CompareOp op, const Term& rhs) {
  auto a = lhs.numeric_value();
  auto b = rhs.numeric_value();
  if (a && b) {
    switch (op) {
      case CompareOp::Eq: return *a == *b;
      case CompareOp::Ne: return *a != *b;
      case CompareOp::Lt: return *a < *b;
      case CompareOp::Le: return *a <= *b;
      case CompareOp::Gt: return *a > *b;
      case CompareOp::Ge: return *a >= *b;
    }
  }
  if (op == CompareOp::Eq) return lhs == rhs;
  if (op == CompareOp::Ne) return lhs != rhs;
  return false;
}

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : in_(text) { q_.prefixes = rdf::standard_prefixes(); }

  Query parse() {
    prologue();
    skip();
    for (auto kw : {"ASK", "CONSTRUCT", "DESCRIBE"})
      if (in_.starts_with_keyword(kw)) unsupported(kw);
    expect_keyword("SELECT");
    select_clause();
    skip();
    if (in_.starts_with_keyword("FROM")) unsupported("FROM");
    if (in_.starts_with_keyword("WHERE")) in_.advance(5);
    skip();
    expect('{');
    group();
    modifiers();
    finish();
    return std::move(q_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, in_.line(), in_.column());
  }
  [[noreturn]] void unsupported(std::string_view what) const {
    throw UnsupportedFeature("unsupported SPARQL feature '" + std::string(what) + "' at line " +
                             std::to_string(in_.line()) + ", column " + std::to_string(in_.column()));
  }

  void skip() { in_.skip_ws_and_comments('#'); }

  void expect(char c) {
    skip();
    if (in_.peek() != c) fail(std::string("expected '") + c + "'");
    in_.advance();
  }

  void expect_keyword(std::string_view kw) {
    skip();
    if (!in_.starts_with_keyword(kw)) fail("expected " + std::string(kw));
    in_.advance(kw.size());
  }

  std::string word() {
    std::string out;
    while (is_name_char(in_.peek())) out += in_.get();
    return out;
  }

  void prologue() {
    while (true) {
      skip();
      if (in_.starts_with_keyword("BASE")) unsupported("BASE");
      if (!in_.starts_with_keyword("PREFIX")) return;
      in_.advance(6);
      skip();
      std::string prefix = word();
      if (in_.peek() != ':') fail("expected ':' after prefix name");
      in_.advance();
      skip();
      if (in_.peek() != '<') fail("expected '<' starting the namespace IRI");
      q_.prefixes[prefix] = iri_ref();
    }
  }

  std::string iri_ref() {
    in_.advance();  // '<'
    std::string iri;
    while (!in_.at_end() && in_.peek() != '>') {
      char c = in_.peek();
      if (std::isspace(static_cast<unsigned char>(c))) fail("whitespace inside IRI");
      iri += in_.get();
    }
    if (in_.at_end()) fail("unterminated IRI");
    in_.advance();
    return iri;
  }

  void select_clause() {
    skip();
    if (in_.starts_with_keyword("DISTINCT")) {
      in_.advance(8);
      q_.distinct = true;
    } else if (in_.starts_with_keyword("REDUCED")) {
      in_.advance(7);
    }
    skip();
    if (in_.peek() == '*') {
      in_.advance();
      star_ = true;
      return;
    }
    while (true) {
      skip();
      char c = in_.peek();
      if (c == '(') unsupported("SELECT expression");
      if (c != '?' && c != '$') break;
      in_.advance();
      std::string name = word();
      if (name.empty()) fail("expected variable name");
      if (std::find(q_.select.begin(), q_.select.end(), name) == q_.select.end()) q_.select.push_back(name);
    }
    if (q_.select.empty()) fail("expected '*' or at least one variable after SELECT");
  }

  void reject_group_keywords() {
    for (auto kw : {"OPTIONAL", "UNION", "MINUS", "GRAPH", "SERVICE", "BIND", "VALUES", "SELECT"})
      if (in_.starts_with_keyword(kw)) unsupported(kw);
    if (in_.peek() == '{') unsupported("nested group");
  }

  void group() {
    while (true) {
      skip();
      if (in_.at_end()) fail("unterminated group pattern");
      if (in_.peek() == '}') {
        in_.advance();
        break;
      }
      reject_group_keywords();
      if (in_.starts_with_keyword("FILTER")) {
        in_.advance(6);
        filter();
        continue;
      }
      triples_block();
      skip();
      if (in_.peek() == '.') in_.advance();
      skip();
      if (in_.peek() == '{' || in_.peek() == '}') continue;
      reject_group_keywords();
    }
    if (q_.patterns.empty()) fail("empty basic graph pattern");
  }

  void triples_block() {
    Slot subject = slot(Position::Subject);
    while (true) {
      skip();
      Slot predicate = slot(Position::Predicate);
      if (in_.peek() == '/' || in_.peek() == '|' || in_.peek() == '*' || in_.peek() == '+')
        unsupported("property path");
      while (true) {
        Slot object = slot(Position::Object);
        q_.patterns.push_back({subject, predicate, object});
        skip();
        if (in_.peek() != ',') break;
        in_.advance();
      }
      skip();
      if (in_.peek() != ';') return;
      while (in_.peek() == ';') {
        in_.advance();
        skip();
      }
      if (in_.peek() == '.' || in_.peek() == '}') return;
    }
  }

  enum class Position { Subject, Predicate, Object, Filter };

  Slot slot(Position pos) {
    skip();
    char c = in_.peek();
    if (in_.at_end()) fail("unexpected end of query");
    if (c == '?' || c == '$') {
      in_.advance();
      std::string name = word();
      if (name.empty()) fail("expected variable name");
      note_var(name);
      return Slot::variable(name);
    }
    if (c == '<') return Slot::constant(Term::iri(iri_ref()));
    if (c == '"' || c == '\'') {
      if (pos == Position::Subject || pos == Position::Predicate) fail("literal not allowed here");
      return Slot::constant(string_literal());
    }
    if (c == '[' || c == '(') unsupported(c == '[' ? "blank node property list" : "collection");
    if (c == '^') unsupported("property path");
    if (c == '_' && in_.peek(1) == ':') {
      if (pos == Position::Predicate || pos == Position::Filter) fail("blank node not allowed here");
      in_.advance(2);
      std::string label = word();
      if (label.empty()) fail("expected blank node label");
      std::string name = "_:" + label;
      note_var(name);
      return Slot::variable(name);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.') {
      if (pos == Position::Subject || pos == Position::Predicate) fail("literal not allowed here");
      return Slot::constant(number());
    }
    if (pos == Position::Predicate && c == 'a' && !is_name_char(in_.peek(1)) && in_.peek(1) != ':') {
      in_.advance();
      return Slot::constant(Term::iri(std::string(rdf::kRdfNs) + "type"));
    }
    for (auto kw : {"true", "false"}) {
      if (in_.starts_with_keyword(kw) && in_.peek(std::string_view(kw).size()) != ':') {
        if (pos == Position::Subject || pos == Position::Predicate) fail("literal not allowed here");
        in_.advance(std::string_view(kw).size());
        return Slot::constant(Term::boolean(kw[0] == 't'));
      }
    }
    return Slot::constant(prefixed_name(pos == Position::Filter));
  }

  Term prefixed_name(bool in_filter) {
    std::string prefix = word();
    if (in_.peek() != ':') {
      if (in_filter && (in_.peek() == '(' || !prefix.empty())) unsupported("function call in FILTER");
      fail(prefix.empty() ? "unexpected character '" + std::string(1, in_.peek()) + "'"
                          : "expected ':' in prefixed name '" + prefix + "'");
    }
    in_.advance();
    std::string local;
    while (is_name_char(in_.peek()) || (in_.peek() == '.' && is_name_char(in_.peek(1)))) local += in_.get();
    auto it = q_.prefixes.find(prefix);
    if (it == q_.prefixes.end()) throw ResolutionError("undeclared prefix '" + prefix + ":'");
    return Term::iri(it->second + local);
  }

  Term string_literal() {
    char quote = in_.get();
    if (in_.peek() == quote && in_.peek(1) == quote) unsupported("long string literal");
    std::string lex;
    while (true) {
      if (in_.at_end() || in_.peek() == '\n') fail("unterminated string literal");
      char c = in_.get();
      if (c == quote) break;
      if (c == '\\') {
        char e = in_.get();
        switch (e) {
          case 'n': lex += '\n'; break;
          case 't': lex += '\t'; break;
          case 'r': lex += '\r'; break;
          case '"': lex += '"'; break;
          case '\'': lex += '\''; break;
          case '\\': lex += '\\'; break;
          default: fail(std::string("bad escape '\\") + e + "'");
        }
        continue;
      }
      lex += c;
    }
    if (in_.peek() == '@') {
      in_.advance();
      std::string lang;
      while (std::isalnum(static_cast<unsigned char>(in_.peek())) || in_.peek() == '-') lang += in_.get();
      if (lang.empty()) fail("empty language tag");
      return Term::lang_literal(lex, lang);
    }
    if (in_.peek() == '^' && in_.peek(1) == '^') {
      in_.advance(2);
      Term dt = in_.peek() == '<' ? Term::iri(iri_ref()) : prefixed_name(false);
      return Term::literal(lex, dt.value());
    }
    return Term::literal(lex);
  }

  Term number() {
    std::string s;
    if (in_.peek() == '+' || in_.peek() == '-') s += in_.get();
    bool dot = false, exp = false, digits = false;
    while (true) {
      char c = in_.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
        s += in_.get();
      } else if (c == '.' && !dot && !exp && std::isdigit(static_cast<unsigned char>(in_.peek(1)))) {
        dot = true;
        s += in_.get();
      } else if ((c == 'e' || c == 'E') && digits && !exp) {
        exp = true;
        s += in_.get();
        if (in_.peek() == '+' || in_.peek() == '-') s += in_.get();
        if (!std::isdigit(static_cast<unsigned char>(in_.peek()))) fail("malformed exponent");
      } else {
        break;
      }
    }
    if (!digits) fail("malformed number");
    return Term::literal(s, rdf::xsd(exp ? "double" : dot ? "decimal" : "integer"));
  }

  void filter() {
    skip();
    for (auto kw : {"NOT", "EXISTS"})
      if (in_.starts_with_keyword(kw)) unsupported("FILTER " + std::string(kw));
    if (in_.peek() != '(') unsupported("FILTER function call");
    in_.advance();
    skip();
    if (in_.peek() == '!' || in_.peek() == '(') unsupported("FILTER expression");
    Filter f;
    collecting_filter_ = true;
    f.lhs = slot(Position::Filter);
    skip();
    char c = in_.peek();
    char n = in_.peek(1);
    if (c == '=') {
      f.op = CompareOp::Eq;
      in_.advance();
    } else if (c == '!' && n == '=') {
      f.op = CompareOp::Ne;
      in_.advance(2);
    } else if (c == '<') {
      f.op = n == '=' ? CompareOp::Le : CompareOp::Lt;
      in_.advance(n == '=' ? 2 : 1);
    } else if (c == '>') {
      f.op = n == '=' ? CompareOp::Ge : CompareOp::Gt;
      in_.advance(n == '=' ? 2 : 1);
    } else if ((c == '&' && n == '&') || (c == '|' && n == '|')) {
      unsupported("boolean FILTER connective");
    } else {
      fail("expected comparison operator");
    }
    skip();
    f.rhs = slot(Position::Filter);
    skip();
    if ((in_.peek() == '&' && in_.peek(1) == '&') || (in_.peek() == '|' && in_.peek(1) == '|'))
      unsupported("boolean FILTER connective");
    expect(')');
    collecting_filter_ = false;
    for (const Slot* s : {&f.lhs, &f.rhs})
      if (s->is_var()) filter_vars_.push_back(s->var);
    q_.filters.push_back(std::move(f));
  }

  void modifiers() {
    while (true) {
      skip();
      for (auto kw : {"ORDER", "GROUP", "HAVING", "OFFSET"})
        if (in_.starts_with_keyword(kw)) unsupported(kw);
      if (!in_.starts_with_keyword("LIMIT")) return;
      if (q_.limit) fail("duplicate LIMIT");
      in_.advance(5);
      skip();
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(in_.peek()))) digits += in_.get();
      if (digits.empty()) fail("expected a non-negative integer after LIMIT");
      q_.limit = static_cast<std::size_t>(std::stoull(digits));
    }
  }

  void finish() {
    skip();
    if (!in_.at_end()) fail("unexpected trailing input");
    if (star_) {
      for (const auto& v : pattern_vars_)
        if (!v.starts_with("_:")) q_.select.push_back(v);
    }
    auto in_pattern = [&](const std::string& v) {
      return std::find(pattern_vars_.begin(), pattern_vars_.end(), v) != pattern_vars_.end();
    };
    for (const auto& v : q_.select)
      if (!in_pattern(v)) throw ValidationError("selected variable ?" + v + " does not occur in the pattern");
    for (const auto& v : filter_vars_)
      if (!in_pattern(v)) throw ValidationError("filtered variable ?" + v + " does not occur in the pattern");
  }

  void note_var(const std::string& name) {
    if (collecting_filter_) return;
    if (std::find(pattern_vars_.begin(), pattern_vars_.end(), name) == pattern_vars_.end())
      pattern_vars_.push_back(name);
  }

  text::Cursor in_;
  Query q_;
  bool star_ = false;
  bool collecting_filter_ = false;
  std::vector<std::string> pattern_vars_;
  std::vector<std::string> filter_vars_;
};

}  // namespace

Query parse_query(std::string_view text) { return Parser(text).parse(); }

std::string BindingTable::to_tsv() const {
  std::vector<std::string> header;
  for (const auto& c : columns) header.push_back("?" + c);
  std::string out = text::join(header, "\t") + "\n";
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& t : row) cells.push_back(t.to_string());
    out += text::join(cells, "\t") + "\n";
  }
  return out;
}

bool row_less(const std::vector<Term>& a, const std::vector<Term>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    std::string x = a[i].to_string(), y = b[i].to_string();
    if (x != y) return x < y;
  }
  return a.size() < b.size();
}

namespace {

struct Executor {
  const rdf::Graph& graph;
  const Query& query;
  std::map<std::string, std::size_t> ids;
  std::vector<std::optional<Term>> binding;
  std::vector<std::size_t> order;
  // Filters that become checkable once pattern `i` in `order` is matched.
  std::vector<std::vector<const Filter*>> ready;
  std::vector<std::size_t> projection;
  std::map<std::vector<std::string>, std::vector<Term>> rows;

  Executor(const rdf::Graph& g, const Query& q) : graph(g), query(q) {
    auto id = [&](const Slot& s) {
      if (s.is_var()) ids.emplace(s.var, ids.size());
    };
    for (const auto& p : q.patterns) {
      id(p.subject);
      id(p.predicate);
      id(p.object);
    }
    binding.resize(ids.size());
    plan();
    for (const auto& v : q.select) projection.push_back(ids.at(v));
  }

  // Greedy order: next pattern is the one with the most slots already fixed.
  void plan() {
    std::vector<bool> bound(ids.size(), false), used(query.patterns.size(), false);
    auto fixed = [&](const Slot& s) { return !s.is_var() || bound[ids.at(s.var)]; };
    for (std::size_t step = 0; step < query.patterns.size(); ++step) {
      int best_score = -1;
      std::size_t best = 0;
      for (std::size_t i = 0; i < query.patterns.size(); ++i) {
        if (used[i]) continue;
        const auto& p = query.patterns[i];
        int score = fixed(p.subject) * 2 + fixed(p.predicate) + fixed(p.object) * 2;
        if (score > best_score) {
          best_score = score;
          best = i;
        }
      }
      used[best] = true;
      order.push_back(best);
      for (const Slot* s : {&query.patterns[best].subject, &query.patterns[best].predicate,
                            &query.patterns[best].object})
        if (s->is_var()) bound[ids.at(s->var)] = true;
      ready.emplace_back();
      for (const auto& f : query.filters) {
        bool checkable = fixed(f.lhs) && fixed(f.rhs);
        bool already = false;
        for (const auto& earlier : ready)
          if (std::find(earlier.begin(), earlier.end(), &f) != earlier.end()) already = true;
        if (checkable && !already) ready.back().push_back(&f);
      }
    }
  }

  std::optional<Term> resolve(const Slot& s) const {
    if (!s.is_var()) return s.term;
    return binding[ids.at(s.var)];
  }

  bool bind(const Slot& s, const Term& value, std::vector<std::size_t>& newly) {
    if (!s.is_var()) return *s.term == value;
    auto& b = binding[ids.at(s.var)];
    if (b) return *b == value;
    b = value;
    newly.push_back(ids.at(s.var));
    return true;
  }

  void search(std::size_t depth) {
    if (depth == order.size()) {
      std::vector<Term> row;
      std::vector<std::string> key;
      for (auto i : projection) {
        row.push_back(*binding[i]);
        key.push_back(binding[i]->to_string());
      }
      rows.emplace(std::move(key), std::move(row));
      return;
    }
    const auto& p = query.patterns[order[depth]];
    rdf::TriplePattern tp{resolve(p.subject), resolve(p.predicate), resolve(p.object)};
    if (tp.subject && tp.subject->is_literal()) return;
    if (tp.predicate && !tp.predicate->is_iri()) return;
    for (const auto& t : graph.match(tp)) {
      std::vector<std::size_t> newly;
      bool ok = bind(p.subject, t.subject, newly) && bind(p.predicate, t.predicate, newly) &&
                bind(p.object, t.object, newly);
      if (ok) {
        for (const Filter* f : ready[depth]) {
          if (!compare_terms(*resolve(f->lhs), f->op, *resolve(f->rhs))) {
            ok = false;
            break;
          }
        }
      }
      if (ok) search(depth + 1);
      for (auto i : newly) binding[i].reset();
    }
  }
};

}  // namespace

BindingTable execute(const rdf::Graph& graph, const Query& query) {
  BindingTable table;
  table.columns = query.select;
  if (query.patterns.empty()) return table;
  Executor ex(graph, query);
  ex.search(0);
  for (auto& [key, row] : ex.rows) {
    if (query.limit && table.rows.size() >= *query.limit) break;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace phkg::query
