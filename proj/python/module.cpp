#include <map>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phkg/competency.hpp"
#include "phkg/error.hpp"
#include "phkg/foodlog.hpp"
#include "phkg/pipeline.hpp"
#include "phkg/rdf/turtle.hpp"
#include "phkg/report.hpp"
#include "phkg/sparql.hpp"

namespace py = pybind11;
namespace pl = phkg::pipeline;
using namespace phkg;

namespace {

using Settings = std::map<std::string, std::string>;

pl::PipelineConfig config_from(const Settings& settings) {
  pl::PipelineConfig cfg;
  for (const auto& [key, value] : settings) pl::apply_setting(cfg, key, value);
  return cfg;
}

std::optional<MealType> meal_from(const std::optional<std::string>& meal) {
  if (!meal || *meal == "any") return std::nullopt;
  return parse_meal(*meal);
}

double cv(const std::vector<double>& series) { return tss::coefficient_of_variation(series); }

std::string generate_log(int days, std::uint64_t seed, const std::string& start, const std::string& user,
                         bool consistent_carbs, bool low_carb_high_fat, double skip_breakfast) {
  GenSpec spec;
  spec.num_days = days;
  spec.seed = seed;
  spec.start = Date::parse(start);
  spec.user_id = user;
  spec.consistent_carbs = consistent_carbs;
  spec.low_carb_high_fat = low_carb_high_fat;
  spec.skip_breakfast_probability = skip_breakfast;
  return write_log(generate_synthetic_log(spec));
}

std::string mine(const std::string& log_text, const std::string& user, const Settings& settings) {
  auto cfg = config_from(settings);
  auto log = pl::ingest(log_text, user);
  return pl::dump(report::patterns_json(tss::mine_patterns(log, cfg.thresholds, cfg.window_days)));
}

std::string build_kg(const std::string& log_text, const std::string& profile_json, const Settings& settings) {
  auto cfg = config_from(settings);
  auto profile = pl::load_profile(profile_json);
  auto log = pl::ingest(log_text, profile.user_id);
  return rdf::serialize_turtle(build_phkg(tss::mine_patterns(log, cfg.thresholds, cfg.window_days), profile));
}

py::tuple reason(const std::string& kg_turtle, const Settings& settings) {
  auto cfg = config_from(settings);
  auto out = pl::reason(rdf::parse_turtle(kg_turtle), pl::load_rules(cfg.rules_path), cfg.question);
  return py::make_tuple(rdf::serialize_turtle(out.classification.graph), pl::dump(out.report));
}

std::string run_query(const std::string& kg_turtle, const std::string& sparql) {
  return query::execute(rdf::parse_turtle(kg_turtle), query::parse_query(sparql)).to_tsv();
}

std::string answer(const std::string& kg_turtle, const std::string& question_id, const std::string& catalog_json,
                   const std::string& item, const std::optional<std::string>& meal, const Settings& settings) {
  auto cfg = config_from(settings);
  competency::CompetencyParams params;
  std::optional<recommend::RecipeCatalog> catalog;
  if (!catalog_json.empty()) {
    catalog = recommend::load_catalog(catalog_json);
    params.catalog = &*catalog;
  }
  if (!cfg.rules_path.empty()) params.rules = pl::load_rules(cfg.rules_path);
  params.meal = meal_from(meal);
  params.item = item;
  params.progress_band = cfg.progress_band;
  auto graph = rdf::parse_turtle(kg_turtle);
  return pl::dump(competency::answer_json(competency::answer_competency(graph, question_id, params)));
}

std::string augment_question(const std::string& question, const std::string& constraints_json) {
  return reasoner::augment_question(question, pl::constraints_from_document(constraints_json));
}

std::string recommend_recipes(const std::string& catalog_json, const std::string& constraints_json,
                              const std::optional<std::string>& meal) {
  auto catalog = recommend::load_catalog(catalog_json);
  reasoner::ConstraintSet cs;
  if (!constraints_json.empty()) cs = pl::constraints_from_document(constraints_json);
  return pl::dump(recommend::recommendations_json(recommend::filter_recipes(catalog, cs, meal_from(meal))));
}

std::vector<std::pair<std::string, std::string>> run_pipeline(const std::string& log_text,
                                                              const std::string& profile_json,
                                                              const std::string& catalog_json,
                                                              const Settings& settings) {
  auto cfg = config_from(settings);
  return pl::run(log_text, profile_json, catalog_json, pl::load_rules(cfg.rules_path), cfg).files;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Food log mining, knowledge graph assembly, guideline reasoning and recipe ranking";

  auto base = py::register_exception<Error>(m, "PhkgError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<InsufficientData>(m, "InsufficientData", base);
  py::register_exception<UndefinedStatistic>(m, "UndefinedStatistic", base);
  py::register_exception<DataInconsistency>(m, "DataInconsistency", base);
  py::register_exception<UnsupportedFeature>(m, "UnsupportedFeature", base);
  py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<ResolutionError>(m, "ResolutionError", base);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("cv", &cv, py::arg("series"));
  m.def("generate_log", &generate_log, py::arg("days") = 35, py::arg("seed") = 7, py::arg("start") = "2021-09-01",
        py::arg("user") = "user", py::arg("consistent_carbs") = false, py::arg("low_carb_high_fat") = false,
        py::arg("skip_breakfast") = 0.0);
  m.def("mine", &mine, py::arg("log"), py::arg("user") = "user", py::arg("settings") = Settings{});
  m.def("build_kg", &build_kg, py::arg("log"), py::arg("profile"), py::arg("settings") = Settings{});
  m.def("reason", &reason, py::arg("kg"), py::arg("settings") = Settings{});
  m.def("query", &run_query, py::arg("kg"), py::arg("sparql"));
  m.def("answer", &answer, py::arg("kg"), py::arg("question"), py::arg("catalog") = "", py::arg("item") = "",
        py::arg("meal") = py::none(), py::arg("settings") = Settings{});
  m.def("augment_question", &augment_question, py::arg("question"), py::arg("constraints"));
  m.def("recommend", &recommend_recipes, py::arg("catalog"), py::arg("constraints") = "",
        py::arg("meal") = py::none());
  m.def("run_pipeline", &run_pipeline, py::arg("log"), py::arg("profile"), py::arg("catalog") = "",
        py::arg("settings") = Settings{});
  m.def("question_ids", &competency::question_ids);
}
