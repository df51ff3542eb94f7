#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "phkg/error.hpp"
#include "phkg/guidelines.hpp"
#include "phkg/rdf/turtle.hpp"
#include "phkg/vocab.hpp"

namespace {

using namespace phkg;
using namespace phkg::guidelines;
using rdf::Graph;
using rdf::Term;
namespace v = phkg::vocab;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rule_path(const std::string& name) { return std::string(PHKG_RULES_DIR) + "/" + name; }

Term ex(const std::string& local) { return Term::iri("https://w3id.org/pho-example/user/" + local); }

const GuidelineRule& builtin(const std::string& id) {
  for (const auto& r : builtin_guidelines())
    if (r.id == id) return r;
  throw std::runtime_error("no rule " + id);
}

TEST(Builtins, TwoRulesWithPayloads) {
  const auto& rules = builtin_guidelines();
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_EQ(rules[0].id, "G1");
  EXPECT_EQ(rules[1].id, "G2");

  const auto& g1 = builtin("G1");
  EXPECT_EQ(g1.polarity, Polarity::DirectiveOnMatch);
  EXPECT_EQ(g1.directive_class, v::pho_MediterraneanDietDirective);
  EXPECT_EQ(g1.recommendation_class, v::pho_MediterraneanDietRecommendation);
  EXPECT_EQ(std::get<TagConstraint>(g1.constraint).tag, "Mediterranean");

  const auto& g2 = builtin("G2");
  EXPECT_EQ(g2.polarity, Polarity::DirectiveOnNonCompliance);
  EXPECT_EQ(g2.directive_class, v::pho_ConsistentCarbDietDirective);
  EXPECT_EQ(g2.recommendation_class, v::pho_ConsistentCarbRecommendation);
  auto n = std::get<NutrientConstraint>(g2.constraint);
  EXPECT_EQ(n.nutrient, Nutrient::Carbohydrates);
  EXPECT_EQ(n.unit, "g");
  EXPECT_EQ(n.per_meal_lower, 30);
  EXPECT_EQ(n.per_meal_upper, 45);
  EXPECT_EQ(n.daily_total, 150);
  EXPECT_EQ(n.midpoint(), 37.5);
}

TEST(Builtins, LabelsAreGuidelineText) {
  EXPECT_EQ(builtin("G1").label,
            "For pre-diabetic and diabetic individuals diet low in total fat but relatively high in "
            "carbohydrates should be replaced with Mediterranean diet.");
  EXPECT_EQ(builtin("G2").label,
            "For individuals whose daily insulin dosing is fixed, a consistent pattern of carbohydrate intake "
            "with respect to time and amount may be recommended to improve glycemic control and reduce the "
            "risk of hypoglycemia.");
}

TEST(ParseGuideline, RuleFilesEqualBuiltins) {
  EXPECT_EQ(parse_guideline(slurp(rule_path("g1.rule"))), builtin("G1"));
  EXPECT_EQ(parse_guideline(slurp(rule_path("g2.rule"))), builtin("G2"));
}

TEST(ParseGuideline, Errors) {
  EXPECT_THROW(parse_guideline(""), ParseError);
  EXPECT_THROW(parse_guideline("# only a comment\n"), ParseError);

  std::string g2 = slurp(rule_path("g2.rule"));
  std::string bad_range = g2;
  bad_range.replace(bad_range.find("\"lower\": 30"), 11, "\"lower\": 50");
  EXPECT_THROW(parse_guideline(bad_range), ValidationError);

  std::string unknown = g2;
  unknown.replace(unknown.find("pho:FixedInsulinDosage"), 22, "pho:NoSuchClass");
  EXPECT_THROW(parse_guideline(unknown), ValidationError);

  std::string missing = g2.substr(0, g2.find("directive"));
  EXPECT_THROW(parse_guideline(missing), ParseError);

  std::string bad_fires = g2;
  bad_fires.replace(bad_fires.find("on-non-compliance"), 17, "sometimes");
  EXPECT_THROW(parse_guideline(bad_fires), ParseError);

  std::string dup = g2 + "rule G3\n";
  EXPECT_THROW(parse_guideline(dup), ParseError);

  std::string neg = g2;
  neg.replace(neg.find("\npattern "), 9, "\npattern not ");
  EXPECT_THROW(parse_guideline(neg), UnsupportedFeature);
}

TEST(ParseClassExpr, Grammar) {
  ClassExpr e = parse_class_expr("prov:Person and (sio:hasAttribute some pho:HighCarbDiet or pho:LowFatDiet)");
  ASSERT_EQ(e.kind(), ClassExpr::Kind::And);
  ASSERT_EQ(e.operands().size(), 2u);
  EXPECT_EQ(e.operands()[0], ClassExpr::named(v::prov_Person));
  EXPECT_EQ(e.operands()[1].kind(), ClassExpr::Kind::Or);
  EXPECT_EQ(e.operands()[1].operands()[0], ClassExpr::some(v::sio_hasAttribute, ClassExpr::named(v::pho_HighCarbDiet)));

  EXPECT_EQ(parse_class_expr("sio:hasValue hasValue true"), ClassExpr::has_value(v::sio_hasValue, Term::boolean(true)));
  EXPECT_EQ(parse_class_expr("sio:hasAttribute only pho:LowFatDiet"),
            ClassExpr::only(v::sio_hasAttribute, ClassExpr::named(v::pho_LowFatDiet)));
  EXPECT_THROW(parse_class_expr("prov:Person and"), ParseError);
  EXPECT_THROW(parse_class_expr("sio:hasAttribute min 1 pho:LowFatDiet"), UnsupportedFeature);
  EXPECT_THROW(parse_class_expr("ex:Thing"), ResolutionError);
}

TEST(ParseClassExpr, RenderingRoundTrips) {
  gen::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    ClassExpr e = gen::class_expr(rng, 3);
    bool has_not = e.to_string(rdf::standard_prefixes()).find("not ") != std::string::npos;
    if (has_not) continue;
    std::string text = e.to_string(rdf::standard_prefixes());
    EXPECT_EQ(parse_class_expr(text), e) << text;
  }
}

TEST(Payload, ParseCanonicalAndValidate) {
  auto p = parse_payload(R"({"carbohydrate": {"unit": "g", "meal": {"type": "range", "lower": "30", "upper": "45"},
                             "daily_total": "150"}})");
  EXPECT_EQ(p, builtin("G2").constraint);
  EXPECT_EQ(parse_payload(canonical_payload(p)), p);
  auto tag = parse_payload(R"({"tag": "Mediterranean"})");
  EXPECT_EQ(canonical_payload(tag), R"({"tag":"Mediterranean"})");
  EXPECT_THROW(parse_payload("{"), ValidationError);
  EXPECT_THROW(parse_payload(R"({"tag": ""})"), ValidationError);
  EXPECT_THROW(parse_payload(R"({"fat": {}})"), ValidationError);
  EXPECT_THROW(parse_payload(R"({"carbohydrate": {"unit": "mg", "meal": {"type": "range", "lower": 30, "upper": 45},
                                 "daily_total": 150}})"),
               ValidationError);
  NutrientConstraint bad;
  bad.per_meal_lower = 0;
  bad.per_meal_upper = 10;
  bad.daily_total = 10;
  EXPECT_THROW(validate_payload(bad), ValidationError);
}

TEST(ValidateRule, DirectiveAndRecommendationDistinct) {
  GuidelineRule r = builtin("G1");
  r.recommendation_class = r.directive_class;
  EXPECT_THROW(validate_rule(r), ValidationError);
  r = builtin("G1");
  r.directive_class = v::prov_Person;
  EXPECT_THROW(validate_rule(r), ValidationError);
  r = builtin("G1");
  r.id = "";
  EXPECT_THROW(validate_rule(r), ValidationError);
}

TEST(MakeRule, PolaritySplitsConditionAndCompliance) {
  ClassExpr pop = ClassExpr::named(v::prov_Person);
  ClassExpr pat = ClassExpr::some(v::sio_hasAttribute, ClassExpr::named(v::pho_ConsistentPattern));
  auto on_match = make_rule("R1", "x", pop, pat, Polarity::DirectiveOnMatch, v::pho("ADirective"),
                            v::pho("ARecommendation"), TagConstraint{"x"});
  EXPECT_EQ(on_match.condition, ClassExpr::all_of({pop, pat}));
  EXPECT_EQ(on_match.compliance, ClassExpr::complement(pat));
  auto on_miss = make_rule("R2", "x", pop, pat, Polarity::DirectiveOnNonCompliance, v::pho("ADirective"),
                           v::pho("ARecommendation"), TagConstraint{"x"});
  EXPECT_EQ(on_miss.condition, pop);
  EXPECT_EQ(on_miss.compliance, pat);
}

TEST(CompileCondition, PlanShapes) {
  const auto& pm = rdf::standard_prefixes();
  EXPECT_EQ(compile_condition(ClassExpr::named(v::prov_Person)).describe(pm), "scan (?x0 rdf:type prov:Person)\n");
  EXPECT_EQ(compile_condition(ClassExpr::some(v::sio_hasAttribute, ClassExpr::named(v::pho_FixedInsulinDosage)))
                .describe(pm),
            "scan (?x1 rdf:type pho:FixedInsulinDosage)\n"
            "join (?x0 sio:hasAttribute ?x1)\n");
  EXPECT_EQ(compile_condition(ClassExpr::only(v::sio_hasAttribute,
                                              ClassExpr::all_of({ClassExpr::named(v::pho_HighCarbDiet),
                                                                 ClassExpr::named(v::pho_LowFatDiet)})))
                .describe(pm),
            "scan (?x1 rdf:type pho:HighCarbDiet)\n"
            "scan (?x1 rdf:type pho:LowFatDiet)\n"
            "intersect 2\n"
            "forall (?x0 sio:hasAttribute ?x1)\n");
}

TEST(CompileCondition, NamedScan) {
  Graph g;
  g.insert(ex("alice"), v::rdf_type, v::prov_Person);
  g.insert(ex("bob"), v::rdf_type, v::prov_Person);
  g.insert(ex("bob"), v::rdf_type, v::pho_Directive);
  EXPECT_EQ(compile_condition(ClassExpr::named(v::prov_Person)).execute(g), (std::set<Term>{ex("alice"), ex("bob")}));
  EXPECT_TRUE(compile_condition(ClassExpr::named(v::prov_Person)).execute(Graph()).empty());
}

TEST(CompileCondition, OnlyIsVacuousOnEmptyImage) {
  Graph g;
  g.insert(ex("a"), v::rdf_type, v::prov_Person);
  g.insert(ex("b"), v::sio_hasAttribute, ex("n1"));
  g.insert(ex("n1"), v::rdf_type, v::pho_LowFatDiet);
  g.insert(ex("c"), v::sio_hasAttribute, ex("n2"));
  auto only = ClassExpr::only(v::sio_hasAttribute, ClassExpr::named(v::pho_LowFatDiet));
  auto got = compile_condition(only).execute(g);
  EXPECT_TRUE(got.contains(ex("a")));
  EXPECT_TRUE(got.contains(ex("b")));
  EXPECT_FALSE(got.contains(ex("c")));
  auto some = ClassExpr::some(v::sio_hasAttribute, ClassExpr::named(v::pho_LowFatDiet));
  EXPECT_EQ(compile_condition(some).execute(g), std::set<Term>{ex("b")});
}

TEST(CompileCondition, HasValueAndComplement) {
  Graph g;
  g.insert(ex("u"), v::prov_wasAssociatedWith, v::doid_Diabetes);
  g.insert(ex("w"), v::prov_wasAssociatedWith, v::doid_PreDiabetes);
  auto hv = ClassExpr::has_value(v::prov_wasAssociatedWith, v::doid_Diabetes);
  EXPECT_EQ(compile_condition(hv).execute(g), std::set<Term>{ex("u")});
  auto rest = compile_condition(ClassExpr::complement(hv)).execute(g);
  EXPECT_FALSE(rest.contains(ex("u")));
  EXPECT_TRUE(rest.contains(ex("w")));
  EXPECT_TRUE(rest.contains(v::doid_Diabetes));
}

TEST(CompileCondition, AgreesWithOracle) {
  gen::Rng rng(29);
  for (int i = 0; i < 400; ++i) {
    Graph g = gen::vocabulary_graph(rng, 200);
    ClassExpr e = gen::class_expr(rng, 3);
    EXPECT_EQ(compile_condition(e).execute(g), oracle::class_extension(e, g)) << e.to_string(g.prefixes());
  }
}

TEST(CompileCondition, AndOrAreIntersectionAndUnion) {
  gen::Rng rng(37);
  for (int i = 0; i < 200; ++i) {
    Graph g = gen::vocabulary_graph(rng, 150);
    ClassExpr a = gen::class_expr(rng, 2), b = gen::class_expr(rng, 2);
    auto ea = compile_condition(a).execute(g), eb = compile_condition(b).execute(g);
    std::set<Term> both, either = ea;
    for (const auto& x : ea)
      if (eb.contains(x)) both.insert(x);
    either.insert(eb.begin(), eb.end());
    EXPECT_EQ(compile_condition(ClassExpr::all_of({a, b})).execute(g), both);
    EXPECT_EQ(compile_condition(ClassExpr::any_of({a, b})).execute(g), either);
  }
}

TEST(ClassExpr, ConstructorsGuardInvariants) {
  EXPECT_THROW(ClassExpr::all_of({}), ValidationError);
  EXPECT_THROW(ClassExpr::any_of({}), ValidationError);
  EXPECT_THROW(ClassExpr::named(Term::literal("x")), ValidationError);
  EXPECT_THROW(ClassExpr::some(Term::blank("p"), ClassExpr::named(v::prov_Person)), ValidationError);
}

}  // namespace
