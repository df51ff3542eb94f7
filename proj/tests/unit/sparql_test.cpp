#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "phkg/error.hpp"
#include "phkg/rdf/turtle.hpp"
#include "phkg/sparql.hpp"
#include "phkg/vocab.hpp"

namespace {

using namespace phkg;
using namespace phkg::query;
using rdf::Graph;
using rdf::Term;
namespace v = phkg::vocab;

Term user(const std::string& local) { return Term::iri(std::string(rdf::kDefaultUserNs) + local); }

TEST(ParseQuery, SinglePattern) {
  Query q = parse_query("SELECT ?v WHERE { :ConsistentCarbohydrateIntake sio:hasValue ?v }");
  EXPECT_EQ(q.select, std::vector<std::string>{"v"});
  ASSERT_EQ(q.patterns.size(), 1u);
  EXPECT_EQ(q.patterns[0].subject, Slot::constant(user("ConsistentCarbohydrateIntake")));
  EXPECT_EQ(q.patterns[0].predicate, Slot::constant(v::sio_hasValue));
  EXPECT_EQ(q.patterns[0].object, Slot::variable("v"));
  EXPECT_FALSE(q.limit);
}

TEST(ParseQuery, FullSubset) {
  Query q = parse_query(
      "PREFIX ex: <http://ex/>\n"
      "SELECT DISTINCT ?a ?n WHERE {\n"
      "  ?a a ex:C ; ex:n ?n .\n"
      "  ?a ex:tag \"x\", \"y\"@en .\n"
      "  FILTER(?n >= 2.5)\n"
      "  FILTER (?a != ex:b)\n"
      "} LIMIT 3");
  EXPECT_TRUE(q.distinct);
  EXPECT_EQ(q.patterns.size(), 4u);
  EXPECT_EQ(q.patterns[0].predicate, Slot::constant(v::rdf_type));
  ASSERT_EQ(q.filters.size(), 2u);
  EXPECT_EQ(q.filters[0].op, CompareOp::Ge);
  EXPECT_EQ(q.filters[0].rhs, Slot::constant(Term::literal("2.5", rdf::xsd("decimal"))));
  EXPECT_EQ(q.filters[1].op, CompareOp::Ne);
  EXPECT_EQ(q.limit, 3u);
  EXPECT_EQ(q.prefixes.at("ex"), "http://ex/");
}

TEST(ParseQuery, SelectStar) {
  Query q = parse_query("SELECT * WHERE { ?b <urn:p> ?a }");
  EXPECT_EQ(q.select, (std::vector<std::string>{"b", "a"}));
}

TEST(ParseQuery, Errors) {
  EXPECT_THROW(parse_query("SELECT ?x WHERE { }"), ParseError);
  EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x <urn:p> ?y OPTIONAL { ?x <urn:q> ?z } }"), UnsupportedFeature);
  EXPECT_THROW(parse_query("SELECT ?x WHERE { { ?x <urn:p> ?y } UNION { ?x <urn:q> ?y } }"), UnsupportedFeature);
  EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x <urn:p> ?y . { SELECT ?y WHERE { ?y <urn:q> ?z } } }"),
               UnsupportedFeature);
  EXPECT_THROW(parse_query("SELECT ?z WHERE { ?x <urn:p> ?y }"), ValidationError);
  EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x <urn:p> ?y FILTER(?w > 1) }"), ValidationError);
  EXPECT_THROW(parse_query("SELECT ?x WHERE { ?x nope:p ?y }"), ResolutionError);
  EXPECT_THROW(parse_query("ASK { ?x <urn:p> ?y }"), UnsupportedFeature);
  try {
    parse_query("SELECT ?x\nWHERE { ?x <urn:p> }");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Execute, CvSnippetValue) {
  Graph g = rdf::parse_turtle(fixture::cv_reference_turtle());
  auto t = execute(g, parse_query("SELECT ?v WHERE { :user sio:hasAttribute ?a . ?a sio:hasValue ?v }"));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][0], Term::literal("0.99", rdf::xsd("float")));
}

TEST(Execute, EmptyGraph) {
  auto t = execute(Graph(), parse_query("SELECT ?s WHERE { ?s ?p ?o }"));
  EXPECT_TRUE(t.rows.empty());
  EXPECT_EQ(t.columns, std::vector<std::string>{"s"});
}

TEST(Execute, ChainJoinFindsMiddle) {
  Graph g;
  g.insert(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:b"));
  g.insert(Term::iri("urn:b"), Term::iri("urn:p"), Term::iri("urn:c"));
  auto t = execute(g, parse_query("SELECT ?m WHERE { ?x <urn:p> ?m . ?m <urn:p> ?y }"));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][0], Term::iri("urn:b"));
}

TEST(Execute, FiltersLimitsAndOrder) {
  Graph g;
  for (int i = 0; i < 10; ++i) g.insert(Term::iri("urn:s" + std::to_string(i)), Term::iri("urn:n"), Term::integer(i));
  g.insert(Term::iri("urn:x"), Term::iri("urn:n"), Term::literal("7"));
  auto t = execute(g, parse_query("SELECT ?s ?n WHERE { ?s <urn:n> ?n FILTER(?n > 6.5) }"));
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_TRUE(std::is_sorted(t.rows.begin(), t.rows.end(), row_less));
  t = execute(g, parse_query("SELECT ?s WHERE { ?s <urn:n> ?n FILTER(?n = 7) }"));
  EXPECT_EQ(t.rows, (std::vector<std::vector<Term>>{{Term::iri("urn:s7")}}));
  t = execute(g, parse_query("SELECT ?s WHERE { ?s <urn:n> \"7\" }"));
  EXPECT_EQ(t.rows, (std::vector<std::vector<Term>>{{Term::iri("urn:x")}}));
  t = execute(g, parse_query("SELECT ?s WHERE { ?s <urn:n> ?n } LIMIT 4"));
  EXPECT_EQ(t.rows.size(), 4u);
}

TEST(Execute, SetSemantics) {
  Graph g;
  g.insert(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:b"));
  g.insert(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:c"));
  auto t = execute(g, parse_query("SELECT ?s WHERE { ?s <urn:p> ?o }"));
  EXPECT_EQ(t.rows.size(), 1u);
}

TEST(Execute, SharedVariableInOnePattern) {
  Graph g;
  g.insert(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:a"));
  g.insert(Term::iri("urn:a"), Term::iri("urn:p"), Term::iri("urn:b"));
  auto t = execute(g, parse_query("SELECT ?x WHERE { ?x <urn:p> ?x }"));
  EXPECT_EQ(t.rows, (std::vector<std::vector<Term>>{{Term::iri("urn:a")}}));
}

TEST(CompareTerms, NumericAndIdentity) {
  EXPECT_TRUE(compare_terms(Term::integer(2), CompareOp::Eq, Term::literal("2.0", rdf::xsd("decimal"))));
  EXPECT_TRUE(compare_terms(Term::literal("0.99", rdf::xsd("float")), CompareOp::Lt, Term::integer(1)));
  EXPECT_FALSE(compare_terms(Term::literal("a"), CompareOp::Lt, Term::literal("b")));
  EXPECT_TRUE(compare_terms(Term::literal("a"), CompareOp::Ne, Term::literal("b")));
  EXPECT_FALSE(compare_terms(Term::iri("urn:a"), CompareOp::Ge, Term::integer(1)));
  EXPECT_EQ(compare_op_symbol(CompareOp::Le), "<=");
}

TEST(Tsv, HeaderAndRows) {
  BindingTable t{{"a", "b"}, {{Term::iri("urn:x"), Term::literal("y")}}};
  EXPECT_EQ(t.to_tsv(), "?a\t?b\n<urn:x>\t\"y\"\n");
}

TEST(Execute, AgreesWithBruteForce) {
  gen::Rng rng(59);
  for (int i = 0; i < 150; ++i) {
    Graph g = gen::query_graph(rng, 60);
    Query q = gen::query(rng);
    EXPECT_EQ(execute(g, q), oracle::enumerate_query(g, q));
    EXPECT_EQ(execute(g, parse_query(gen::query_text(q))), oracle::enumerate_query(g, q)) << gen::query_text(q);
  }
}

TEST(Execute, AddingTriplesKeepsRows) {
  gen::Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    Graph g = gen::query_graph(rng, 40);
    Query q = gen::query(rng);
    q.limit.reset();
    auto before = execute(g, q);
    Graph bigger = g;
    Graph extra = gen::query_graph(rng, 20);
    for (const auto& t : extra.triples()) bigger.insert(t);
    auto after = execute(bigger, q);
    for (const auto& row : before.rows)
      EXPECT_NE(std::find(after.rows.begin(), after.rows.end(), row), after.rows.end());
  }
}

}  // namespace
