#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "phkg/builder.hpp"
#include "phkg/error.hpp"
#include "phkg/rdf/turtle.hpp"
#include "phkg/tss.hpp"
#include "phkg/vocab.hpp"

namespace {

using namespace phkg;
using rdf::Graph;
using rdf::Term;
namespace v = phkg::vocab;

Term user(const std::string& local) { return Term::iri(std::string(rdf::kDefaultUserNs) + local); }

TEST(ParseTurtle, SingleTriple) {
  Graph g = rdf::parse_turtle("@prefix : <http://ex/> . :a :b :c .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains({Term::iri("http://ex/a"), Term::iri("http://ex/b"), Term::iri("http://ex/c")}));
}

TEST(ParseTurtle, FrequencySnippet) {
  Graph g = rdf::parse_turtle(
      "@prefix : <https://w3id.org/pho-example/user/> .\n"
      "@prefix sio: <http://semanticscience.org/resource/> .\n"
      "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
      ":user sio:hasAttribute :LowCarbDiet, :HighFatDiet.\n"
      ":LowCarbDiet sio:frequency \"1.0\"^^xsd:float.\n"
      ":HighFatDiet sio:frequency \"1.0\"^^xsd:float.\n");
  EXPECT_EQ(g.size(), 4u);
  EXPECT_TRUE(g.contains({user("LowCarbDiet"), v::sio_frequency, Term::literal("1.0", rdf::xsd("float"))}));
}

TEST(ParseTurtle, ObjectListSharesSubjectAndPredicate) {
  Graph g = rdf::parse_turtle(
      "@prefix : <https://w3id.org/pho-example/user/> .\n"
      "@prefix sio: <http://semanticscience.org/resource/> .\n"
      ":user sio:hasAttribute :LowCarbHighFatNutrientIntakeGoal.\n"
      ":LowCarbHighFatNutrientIntakeGoal\n"
      "    sio:hasParticipant :LowCarbDiet, :HighFatDiet;\n"
      "    sio:hasValue \"true\"^^<http://www.w3.org/2001/XMLSchema#boolean>.\n");
  EXPECT_EQ(g.size(), 4u);
  auto parts = g.objects(user("LowCarbHighFatNutrientIntakeGoal"), v::sio_hasParticipant);
  EXPECT_EQ(parts, (std::vector<Term>{user("HighFatDiet"), user("LowCarbDiet")}));
}

TEST(ParseTurtle, Shorthands) {
  Graph g = rdf::parse_turtle(
      "PREFIX ex: <http://ex/>\n"
      "# comment\n"
      "ex:s a ex:C ; ex:i 42 ; ex:d -1.5 ; ex:e 1e3 ; ex:b true ; ex:l \"hi\"@en-GB ; ex:x _:n1 .\n"
      "_:n1 ex:q 'single' .\n");
  Term s = Term::iri("http://ex/s");
  EXPECT_TRUE(g.contains({s, v::rdf_type, Term::iri("http://ex/C")}));
  EXPECT_TRUE(g.contains({s, Term::iri("http://ex/i"), Term::integer(42)}));
  EXPECT_TRUE(g.contains({s, Term::iri("http://ex/d"), Term::literal("-1.5", rdf::xsd("decimal"))}));
  EXPECT_TRUE(g.contains({s, Term::iri("http://ex/e"), Term::literal("1e3", rdf::xsd("double"))}));
  EXPECT_TRUE(g.contains({s, Term::iri("http://ex/b"), Term::boolean(true)}));
  EXPECT_TRUE(g.contains({s, Term::iri("http://ex/l"), Term::lang_literal("hi", "en-gb")}));
  EXPECT_TRUE(g.contains({Term::blank("n1"), Term::iri("http://ex/q"), Term::literal("single")}));
  EXPECT_EQ(g.prefixes().at("ex"), "http://ex/");
}

TEST(ParseTurtle, Escapes) {
  Graph g = rdf::parse_turtle("<urn:s> <urn:p> \"a\\\"b\\\\c\\nd\\u00e9\\U0001F600\" .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.triples().begin()->object.value(), "a\"b\\c\nd\xC3\xA9\xF0\x9F\x98\x80");
}

TEST(ParseTurtle, UnknownPrefix) {
  EXPECT_THROW(rdf::parse_turtle(":a :b :c ."), ResolutionError);
  EXPECT_THROW(rdf::parse_turtle("@prefix ex: <http://ex/> . ex:a nope:b ex:c ."), ResolutionError);
}

TEST(ParseTurtle, SyntaxErrorsCarryPosition) {
  try {
    rdf::parse_turtle("<urn:s> <urn:p> <urn:o> .\n<urn:s> <urn:p> \"open\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
  for (const char* bad : {"<urn:s> <urn:p> .", "<urn:s> <urn:p> <urn:o>", "\"lit\" <urn:p> <urn:o> .",
                          "<urn:s> \"p\" <urn:o> .", "<urn:s> <urn:p> [ ] .", "<urn:s> <urn:p> ( ) .",
                          "<rel> <urn:p> <urn:o> .", "@base <http://ex/> .", "<urn:s> <urn:p> \"\"\"x\"\"\" ."})
    EXPECT_THROW(rdf::parse_turtle(bad), ParseError) << bad;
}

TEST(SerializeTurtle, EmptyGraphIsPrefixBlock) {
  std::string text = rdf::serialize_turtle(Graph());
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> prefixes;
  while (std::getline(in, line))
    if (!line.empty()) {
      EXPECT_EQ(line.rfind("@prefix ", 0), 0u) << line;
      prefixes.push_back(line.substr(8, line.find(':') - 8));
    }
  EXPECT_TRUE(std::is_sorted(prefixes.begin(), prefixes.end()));
  EXPECT_EQ(prefixes.size(), rdf::standard_prefixes().size());
}

TEST(SerializeTurtle, CvSnippetTimestamps) {
  Graph g = build_phkg(tss::mine_patterns(fixture::cv_reference_log(), tss::Thresholds{}), fixture::diabetic(false));
  std::string text = rdf::serialize_turtle(g);
  EXPECT_NE(text.find("prov:startedAtTime \"2021-09-23T00:00:00-00:00\"^^xsd:dateTime"), std::string::npos) << text;
  EXPECT_NE(text.find("sio:hasValue \"0.99\"^^xsd:float"), std::string::npos) << text;
  EXPECT_EQ(rdf::parse_turtle(text), g);
}

TEST(SerializeTurtle, ByteStable) {
  gen::Rng rng(17);
  Graph g = gen::turtle_graph(rng, 80);
  Graph copy;
  for (const auto& t : g.triples()) copy.insert(t);
  EXPECT_EQ(rdf::serialize_turtle(g), rdf::serialize_turtle(copy));
}

TEST(SerializeTurtle, RoundTripsGeneratedGraphs) {
  gen::Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    Graph g = gen::turtle_graph(rng, 40);
    std::string text = rdf::serialize_turtle(g);
    EXPECT_EQ(rdf::parse_turtle(text), g) << text;
  }
}

TEST(SerializeTurtle, RoundTripsBuiltGraphs) {
  for (const auto& log : {fixture::steady_carb_log(), fixture::lchf_log(), fixture::erratic_carb_log()}) {
    Graph g = build_phkg(tss::mine_patterns(log, tss::Thresholds{}), fixture::diabetic(true, {"spicy"}));
    EXPECT_EQ(rdf::parse_turtle(rdf::serialize_turtle(g)), g);
  }
}

}  // namespace
