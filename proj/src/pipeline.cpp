#include "phkg/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "phkg/error.hpp"
#include "phkg/rdf/turtle.hpp"
#include "phkg/report.hpp"
#include "phkg/text.hpp"

namespace phkg::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

void PipelineConfig::validate() const {
  thresholds.validate();
  if (window_days < 1) throw ValidationError("window must be at least one day");
  if (!(progress_band >= 0)) throw ValidationError("progress-band must be non-negative");
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  double out = 0;
  auto s = text::trim(value);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ValidationError("setting '" + key + "' expects a number, got '" + value + "'");
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  long long out = 0;
  auto s = text::trim(value);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ValidationError("setting '" + key + "' expects an integer, got '" + value + "'");
  return out;
}

}  // namespace

void apply_setting(PipelineConfig& c, const std::string& raw_key, const std::string& value) {
  const std::string key = text::to_lower(text::trim(raw_key));
  if (key == "log") c.log_path = value;
  else if (key == "profile") c.profile_path = value;
  else if (key == "rules") c.rules_path = value;
  else if (key == "catalog") c.catalog_path = value;
  else if (key == "out-dir" || key == "out_dir") c.out_dir = value;
  else if (key == "question") c.question = value;
  else if (key == "window") c.window_days = static_cast<int>(parse_int(key, value));
  else if (key == "seed") {
    long long s = parse_int(key, value);
    if (s < 0) throw ValidationError("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "progress-band" || key == "progress_band") c.progress_band = parse_double(key, value);
  else if (key == "meal") {
    if (text::to_lower(value) == "any") c.meal.reset();
    else c.meal = parse_meal(value);
  } else if (key.starts_with("thresholds.")) {
    c.thresholds.set(key.substr(11), parse_double(key, value));
  } else {
    throw ValidationError("unknown setting '" + raw_key + "'");
  }
  c.validate();
}

void apply_config_text(PipelineConfig& c, std::string_view text) {
  std::size_t line_no = 0;
  for (const auto& raw : text::split(text, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, 1);
    std::string key(text::trim(line.substr(0, eq)));
    std::string value(text::trim(line.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ParseError("empty key", line_no, 1);
    apply_setting(c, key, value);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<guidelines::GuidelineRule> load_rules(const std::string& path) {
  if (path.empty()) return guidelines::builtin_guidelines();
  std::error_code ec;
  if (!fs::is_directory(path, ec)) return {guidelines::parse_guideline(read_file(path))};
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(path, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".rule") files.push_back(entry.path().string());
  if (ec) throw IoError("cannot list '" + path + "'");
  std::sort(files.begin(), files.end());
  std::vector<guidelines::GuidelineRule> rules;
  for (const auto& f : files) {
    try {
      rules.push_back(guidelines::parse_guideline(read_file(f)));
    } catch (const ParseError& e) {
      throw ValidationError(f + ": " + e.what());
    }
  }
  if (rules.empty()) throw ValidationError("no .rule files in '" + path + "'");
  for (std::size_t i = 0; i < rules.size(); ++i)
    for (std::size_t j = i + 1; j < rules.size(); ++j)
      if (rules[i].id == rules[j].id) throw ValidationError("duplicate rule id '" + rules[i].id + "'");
  return rules;
}

UserProfile load_profile(std::string_view json_text) {
  try {
    return UserProfile::from_json(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed profile: ") + e.what());
  }
}

FoodLog ingest(std::string_view log_text, const std::string& user_id) {
  FoodLog log = parse_log(log_text, user_id);
  auto check = validate_log(log);
  if (!check.ok()) throw ValidationError("food log: " + check.violations.front());
  return log;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

ReasonOutput reason(const rdf::Graph& kg, const std::vector<guidelines::GuidelineRule>& rules,
                    const std::string& question) {
  ReasonOutput out;
  out.classification = reasoner::classify(kg, rules);
  out.constraints = reasoner::active_constraints(out.classification.graph);
  out.question = reasoner::augment_question(question, out.constraints);
  out.report = report::reason_report(out.classification, out.constraints, out.question);
  return out;
}

reasoner::ConstraintSet constraints_from_document(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("constraints document is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("verdicts") && doc.contains("constraints"))
    return report::constraints_from_json(doc.at("constraints"));
  return report::constraints_from_json(doc);
}

PipelineResult run(std::string_view log_text, std::string_view profile_text, std::string_view catalog_text,
                   const std::vector<guidelines::GuidelineRule>& rules, const PipelineConfig& config) {
  config.validate();
  PipelineResult r;
  r.profile = load_profile(profile_text);
  r.log = ingest(log_text, r.profile.user_id);
  r.patterns = tss::mine_patterns(r.log, config.thresholds, config.window_days);
  r.kg = build_phkg(r.patterns, r.profile);
  r.reasoned = reason(r.kg, rules, config.question);
  r.files.emplace_back("log.jsonl", write_log(r.log));
  r.files.emplace_back("patterns.json", dump(report::patterns_json(r.patterns)));
  r.files.emplace_back("phkg.ttl", rdf::serialize_turtle(r.kg));
  r.files.emplace_back("phkg-reasoned.ttl", rdf::serialize_turtle(r.reasoned.classification.graph));
  r.files.emplace_back("report.json", dump(r.reasoned.report));
  if (!text::trim(catalog_text).empty()) {
    r.catalog = recommend::load_catalog(catalog_text);
    r.recommendations = recommend::filter_recipes(r.catalog, r.reasoned.constraints, config.meal);
    r.files.emplace_back("recommendations.json", dump(recommend::recommendations_json(r.recommendations)));
  }
  return r;
}

PipelineResult run_files(const PipelineConfig& config) {
  if (config.log_path.empty()) throw ValidationError("pipeline needs a food log");
  if (config.profile_path.empty()) throw ValidationError("pipeline needs a profile");
  std::string log = read_file(config.log_path);
  std::string profile = read_file(config.profile_path);
  std::string catalog = config.catalog_path.empty() ? std::string() : read_file(config.catalog_path);
  PipelineResult r = run(log, profile, catalog, load_rules(config.rules_path), config);
  for (const auto& [name, content] : r.files) write_file((fs::path(config.out_dir) / name).string(), content);
  return r;
}

}  // namespace phkg::pipeline
