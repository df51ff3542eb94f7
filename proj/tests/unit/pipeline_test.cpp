#include <gtest/gtest.h>

#include <filesystem>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "phkg/error.hpp"
#include "phkg/pipeline.hpp"
#include "phkg/rdf/turtle.hpp"

namespace {

using namespace phkg;
using namespace phkg::pipeline;
namespace fs = std::filesystem;
using nlohmann::json;

std::string fixture_text(const std::string& name) { return read_file(fixture::fixture_path(name)); }
std::string catalog_text() { return read_file(fixture::data_path("recipes.json")); }

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("phkg-pipeline-" + name);
  fs::remove_all(p);
  return p;
}

PipelineResult run_fixture(const PipelineConfig& cfg = {}) {
  return run(fixture_text("5weeks.jsonl"), fixture_text("diabetic.json"), catalog_text(),
             guidelines::builtin_guidelines(), cfg);
}

TEST(Run, FiveWeekFixture) {
  PipelineResult r = run_fixture();
  std::set<Date> starts;
  for (const auto& c : r.patterns.consistency)
    if (c.window.granularity.is_daily()) starts.insert(c.window.start);
  EXPECT_EQ(starts.size(), 5u);
  EXPECT_FALSE(r.kg.empty());
  EXPECT_GE(r.reasoned.classification.graph.size(), r.kg.size());
  ASSERT_FALSE(r.recommendations.empty());
  for (const auto& rr : r.recommendations) EXPECT_TRUE(rr.recipe->meal_types.contains(MealType::Breakfast));

  std::vector<std::string> names;
  for (const auto& [name, content] : r.files) names.push_back(name);
  EXPECT_EQ(names, (std::vector<std::string>{"log.jsonl", "patterns.json", "phkg.ttl", "phkg-reasoned.ttl",
                                             "report.json", "recommendations.json"}));
  EXPECT_EQ(rdf::parse_turtle(r.files[2].second), r.kg);
  EXPECT_EQ(rdf::parse_turtle(r.files[3].second), r.reasoned.classification.graph);
  json report = json::parse(r.files[4].second);
  EXPECT_TRUE(report.contains("verdicts"));
  EXPECT_TRUE(report.contains("constraints"));
  EXPECT_EQ(json::parse(r.files[5].second).size(), r.recommendations.size());
}

TEST(Run, Deterministic) {
  auto a = run_fixture();
  auto b = run_fixture();
  EXPECT_EQ(a.files, b.files);
}

TEST(Run, WithoutCatalogSkipsRecommendations) {
  auto r = run(fixture_text("5weeks.jsonl"), fixture_text("diabetic.json"), "", guidelines::builtin_guidelines(), {});
  EXPECT_EQ(r.files.size(), 5u);
  EXPECT_TRUE(r.recommendations.empty());
}

TEST(Run, InvalidConfigRejected) {
  PipelineConfig cfg;
  cfg.window_days = 0;
  EXPECT_THROW(run_fixture(cfg), ValidationError);
}

TEST(ApplySetting, KnownKeys) {
  PipelineConfig c;
  apply_setting(c, "window", "14");
  apply_setting(c, "Seed", "3");
  apply_setting(c, "meal", "any");
  apply_setting(c, "thresholds.cv_consistent_max", "0.3");
  apply_setting(c, "progress-band", "0.1");
  apply_setting(c, "out-dir", "elsewhere");
  EXPECT_EQ(c.window_days, 14);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_FALSE(c.meal);
  EXPECT_DOUBLE_EQ(c.thresholds.cv_consistent_max, 0.3);
  EXPECT_DOUBLE_EQ(c.progress_band, 0.1);
  EXPECT_EQ(c.out_dir, "elsewhere");
  apply_setting(c, "meal", "dinner");
  EXPECT_EQ(c.meal, MealType::Dinner);
}

TEST(ApplySetting, BadKeysAndValues) {
  PipelineConfig c;
  EXPECT_THROW(apply_setting(c, "colour", "red"), ValidationError);
  EXPECT_THROW(apply_setting(c, "window", "seven"), ValidationError);
  EXPECT_THROW(apply_setting(c, "window", "0"), ValidationError);
  EXPECT_THROW(apply_setting(c, "seed", "-1"), ValidationError);
  EXPECT_THROW(apply_setting(c, "thresholds.nope", "1"), ValidationError);
  EXPECT_THROW(apply_setting(c, "thresholds.cv_consistent_max", "-0.1"), ValidationError);
  EXPECT_THROW(apply_setting(c, "meal", "brunch"), ValidationError);
}

TEST(ApplyConfigText, LinesCommentsAndQuotes) {
  PipelineConfig c;
  apply_config_text(c, "# settings\n\nwindow = 10\nquestion = \"What is for lunch?\"\n");
  EXPECT_EQ(c.window_days, 10);
  EXPECT_EQ(c.question, "What is for lunch?");
  try {
    apply_config_text(c, "window = 7\nno equals sign\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(apply_config_text(c, "= 3\n"), ParseError);
}

TEST(Files, ReadAndWrite) {
  EXPECT_THROW(read_file("/nonexistent/phkg/file"), IoError);
  fs::path dir = scratch_dir("files");
  std::string path = (dir / "a" / "b.txt").string();
  write_file(path, "hello\n");
  EXPECT_EQ(read_file(path), "hello\n");
  fs::remove_all(dir);
}

TEST(LoadRules, BuiltinsFileAndDirectory) {
  EXPECT_EQ(load_rules("").size(), guidelines::builtin_guidelines().size());
  std::string dir = PHKG_RULES_DIR;
  auto from_dir = load_rules(dir);
  ASSERT_EQ(from_dir.size(), 2u);
  EXPECT_EQ(from_dir[0].id, "G1");
  EXPECT_EQ(from_dir[1].id, "G2");
  auto one = load_rules(dir + "/g2.rule");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].id, "G2");
  EXPECT_THROW(load_rules(dir + "/missing.rule"), IoError);

  fs::path empty = scratch_dir("rules-empty");
  fs::create_directories(empty);
  EXPECT_THROW(load_rules(empty.string()), ValidationError);
  fs::path dup = scratch_dir("rules-dup");
  write_file((dup / "a.rule").string(), read_file(dir + "/g1.rule"));
  write_file((dup / "b.rule").string(), read_file(dir + "/g1.rule"));
  EXPECT_THROW(load_rules(dup.string()), ValidationError);
  fs::remove_all(empty);
  fs::remove_all(dup);
}

TEST(LoadProfile, Errors) {
  EXPECT_EQ(load_profile(fixture_text("diabetic.json")).user_id, "user");
  EXPECT_THROW(load_profile("{"), ValidationError);
}

TEST(Ingest, DuplicatesRejected) {
  std::string line = R"({"date":"2021-09-01","meal":"breakfast","foods":["oats"],"calories":200,"carbohydrates_g":30,"fat_g":5,"protein_g":8})";
  EXPECT_EQ(ingest(line + "\n", "user").entries().size(), 1u);
  EXPECT_THROW(ingest(line + "\n" + line + "\n", "user"), ValidationError);
}

TEST(ConstraintsFromDocument, ReportOrBareSet) {
  auto r = run_fixture();
  auto from_report = constraints_from_document(r.files[4].second);
  EXPECT_EQ(from_report.constraints.size(), r.reasoned.constraints.constraints.size());
  EXPECT_EQ(from_report.likes, r.reasoned.constraints.likes);
  json report = json::parse(r.files[4].second);
  auto from_set = constraints_from_document(report["constraints"].dump());
  EXPECT_EQ(from_set.constraints.size(), from_report.constraints.size());
  EXPECT_THROW(constraints_from_document("not json"), ValidationError);
}

TEST(RunFiles, WritesEveryOutput) {
  fs::path dir = scratch_dir("run-files");
  PipelineConfig cfg;
  cfg.log_path = fixture::fixture_path("5weeks.jsonl");
  cfg.profile_path = fixture::fixture_path("diabetic.json");
  cfg.catalog_path = fixture::data_path("recipes.json");
  cfg.out_dir = dir.string();
  auto r = run_files(cfg);
  for (const auto& [name, content] : r.files) EXPECT_EQ(read_file((dir / name).string()), content) << name;
  EXPECT_EQ(r.files, run_fixture().files);
  fs::remove_all(dir);

  PipelineConfig missing;
  EXPECT_THROW(run_files(missing), ValidationError);
  missing.log_path = "/nonexistent/log.jsonl";
  missing.profile_path = cfg.profile_path;
  EXPECT_THROW(run_files(missing), IoError);
}

}  // namespace
