// phkg: food log -> temporal patterns -> personal health knowledge graph ->
// guideline reasoning -> questions and recipe recommendations.
//
// Exit status: 0 on success, 1 for invalid input, 2 for I/O failures. Every
// failure prints exactly one line starting with "error:" to stderr.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "phkg/competency.hpp"
#include "phkg/error.hpp"
#include "phkg/foodlog.hpp"
#include "phkg/pipeline.hpp"
#include "phkg/rdf/turtle.hpp"
#include "phkg/report.hpp"
#include "phkg/sparql.hpp"

namespace {

using namespace phkg;
namespace pl = phkg::pipeline;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    pl::write_file(out_path, content);
  }
}

struct Settings {
  std::string config_file;
  std::map<std::string, std::string> flags;  // setting key -> raw option value
  std::vector<std::pair<std::string, CLI::Option*>> options;

  bool given(const std::string& key) const {
    for (const auto& [k, opt] : options)
      if (k == key && opt->count() > 0) return true;
    return false;
  }

  pl::PipelineConfig resolve() const {
    pl::PipelineConfig cfg;
    if (!config_file.empty()) pl::apply_config_text(cfg, pl::read_file(config_file));
    for (const auto& [key, value] : flags)
      if (given(key)) pl::apply_setting(cfg, key, value);
    return cfg;
  }

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_option(flag, flags[key], help));
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Personal health knowledge graph pipeline"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  app.add_option("--config", settings.config_file, "key=value settings file (command-line flags win)");
  for (const auto& name : tss::Thresholds::field_names())
    settings.add(&app, "--thresholds." + name, "thresholds." + name, "override threshold " + name);

  // gen
  auto* gen = app.add_subcommand("gen", "write a deterministic synthetic food log");
  GenSpec spec;
  std::string gen_start = spec.start.iso(), gen_out;
  gen->add_option("--days", spec.num_days, "number of days")->capture_default_str();
  gen->add_option("--seed", spec.seed, "random seed")->capture_default_str();
  gen->add_option("--start", gen_start, "first date (YYYY-MM-DD)")->capture_default_str();
  gen->add_option("--user", spec.user_id, "user id")->capture_default_str();
  gen->add_flag("--consistent-carbs", spec.consistent_carbs, "keep carbohydrate amounts steady");
  gen->add_flag("--low-carb-high-fat", spec.low_carb_high_fat, "low-carbohydrate, high-fat meals");
  gen->add_option("--skip-breakfast", spec.skip_breakfast_probability, "probability a breakfast is skipped");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "validate a food log and print it in canonical form");
  std::string log_path, user_id = "user", out_path;
  ingest->add_option("--log", log_path, "JSON-lines or CSV food log")->required();
  ingest->add_option("--user", user_id, "user id");
  ingest->add_option("--out", out_path, "output file (default stdout)");

  // summarize
  auto* summarize = app.add_subcommand("summarize", "mine temporal patterns and write them as JSON");
  summarize->add_option("--log", log_path, "food log")->required();
  summarize->add_option("--user", user_id, "user id");
  settings.add(summarize, "--window", "window", "window length in days");
  summarize->add_option("--out", out_path, "output file (default stdout)");

  // build-kg
  auto* build = app.add_subcommand("build-kg", "build the knowledge graph as Turtle");
  std::string profile_path;
  build->add_option("--log", log_path, "food log")->required();
  build->add_option("--profile", profile_path, "profile JSON")->required();
  settings.add(build, "--window", "window", "window length in days");
  build->add_option("--out", out_path, "output file (default stdout)");

  // reason
  auto* reason = app.add_subcommand("reason", "apply guideline rules to a knowledge graph");
  std::string kg_path, report_path;
  reason->add_option("--kg", kg_path, "knowledge graph Turtle")->required();
  settings.add(reason, "--rules", "rules", ".rule file or directory (default: built-in rules)");
  settings.add(reason, "--question", "question", "question to augment");
  reason->add_option("--out", out_path, "augmented Turtle (default stdout)");
  reason->add_option("--report", report_path, "JSON report of verdicts, directives and constraints");

  // query
  auto* query = app.add_subcommand("query", "run a SPARQL query or answer a competency question");
  std::string sparql_path, question_id, catalog_path, item;
  query->add_option("--kg", kg_path, "knowledge graph Turtle")->required();
  auto* sparql_opt = query->add_option("--sparql", sparql_path, "file with a SELECT query");
  auto* question_opt = query->add_option("--question", question_id, "competency question id");
  sparql_opt->excludes(question_opt);
  query->add_option("--catalog", catalog_path, "recipe catalog for recommendation questions");
  settings.add(query, "--meal", "meal", "meal type for recommendation questions (or 'any')");
  query->add_option("--item", item, "allergen or food for allergy-rec / substitute-rec");
  settings.add(query, "--rules", "rules", ".rule file or directory for compliance questions");
  settings.add(query, "--progress-band", "progress-band", "CV change treated as no change");
  query->add_option("--out", out_path, "output file (default stdout)");

  // recommend
  auto* rec = app.add_subcommand("recommend", "rank catalog recipes under a constraint set");
  std::string constraints_path;
  rec->add_option("--catalog", catalog_path, "recipe catalog JSON")->required();
  settings.add(rec, "--meal", "meal", "meal type (or 'any')");
  rec->add_option("--constraints", constraints_path, "constraint set JSON or a reason report");
  rec->add_option("--out", out_path, "output file (default stdout)");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "run every stage and write all outputs");
  settings.add(pipe, "--log", "log", "food log");
  settings.add(pipe, "--profile", "profile", "profile JSON");
  settings.add(pipe, "--catalog", "catalog", "recipe catalog JSON");
  settings.add(pipe, "--rules", "rules", ".rule file or directory");
  settings.add(pipe, "--out-dir", "out-dir", "output directory");
  settings.add(pipe, "--window", "window", "window length in days");
  settings.add(pipe, "--meal", "meal", "meal type for recommendations (or 'any')");
  settings.add(pipe, "--question", "question", "question to augment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  pl::PipelineConfig cfg = settings.resolve();

  if (gen->parsed()) {
    spec.start = Date::parse(gen_start);
    spec.low_carb_max_g_per_day = cfg.thresholds.low_carb_max_g_per_day;
    emit(gen_out, write_log(generate_synthetic_log(spec)));
  } else if (ingest->parsed()) {
    FoodLog log = parse_log(pl::read_file(log_path), user_id);
    auto check = validate_log(log);
    for (const auto& w : check.warnings) std::cerr << "warning: " << w << "\n";
    if (!check.ok()) throw ValidationError("food log: " + check.violations.front());
    emit(out_path, write_log(log));
  } else if (summarize->parsed()) {
    FoodLog log = pl::ingest(pl::read_file(log_path), user_id);
    emit(out_path, pl::dump(report::patterns_json(tss::mine_patterns(log, cfg.thresholds, cfg.window_days))));
  } else if (build->parsed()) {
    UserProfile profile = pl::load_profile(pl::read_file(profile_path));
    FoodLog log = pl::ingest(pl::read_file(log_path), profile.user_id);
    auto patterns = tss::mine_patterns(log, cfg.thresholds, cfg.window_days);
    emit(out_path, rdf::serialize_turtle(build_phkg(patterns, profile)));
  } else if (reason->parsed()) {
    auto kg = rdf::parse_turtle(pl::read_file(kg_path));
    auto out = pl::reason(kg, pl::load_rules(cfg.rules_path), cfg.question);
    if (!report_path.empty()) pl::write_file(report_path, pl::dump(out.report));
    emit(out_path, rdf::serialize_turtle(out.classification.graph));
  } else if (query->parsed()) {
    auto kg = rdf::parse_turtle(pl::read_file(kg_path));
    if (!sparql_path.empty()) {
      emit(out_path, query::execute(kg, query::parse_query(pl::read_file(sparql_path))).to_tsv());
    } else if (!question_id.empty()) {
      competency::CompetencyParams params;
      std::optional<recommend::RecipeCatalog> catalog;
      if (!catalog_path.empty()) {
        catalog = recommend::load_catalog(pl::read_file(catalog_path));
        params.catalog = &*catalog;
      }
      if (!cfg.rules_path.empty()) params.rules = pl::load_rules(cfg.rules_path);
      if (settings.given("meal")) params.meal = cfg.meal;
      params.item = item;
      params.progress_band = cfg.progress_band;
      emit(out_path, pl::dump(competency::answer_json(competency::answer_competency(kg, question_id, params))));
    } else {
      throw ValidationError("query needs --sparql or --question");
    }
  } else if (rec->parsed()) {
    auto catalog = recommend::load_catalog(pl::read_file(catalog_path));
    reasoner::ConstraintSet cs;
    if (!constraints_path.empty()) cs = pl::constraints_from_document(pl::read_file(constraints_path));
    std::optional<MealType> meal;
    if (settings.given("meal")) meal = cfg.meal;
    emit(out_path, pl::dump(recommend::recommendations_json(recommend::filter_recipes(catalog, cs, meal))));
  } else if (pipe->parsed()) {
    auto result = pl::run_files(cfg);
    for (const auto& [name, content] : result.files) std::cout << cfg.out_dir << "/" << name << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const phkg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const phkg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
