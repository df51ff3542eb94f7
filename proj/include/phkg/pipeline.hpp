#pragma once

// Stage functions shared by the command-line tool, the Python module and
// the end-to-end tests, so every entry point produces identical files.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "phkg/builder.hpp"
#include "phkg/guidelines.hpp"
#include "phkg/reasoner.hpp"
#include "phkg/recommend.hpp"
#include "phkg/tss.hpp"

namespace phkg::pipeline {

struct PipelineConfig {
  std::string log_path;
  std::string profile_path;
  /// A .rule file or a directory of them; empty selects the built-ins.
  std::string rules_path;
  std::string catalog_path;
  std::string out_dir = "out";
  tss::Thresholds thresholds;
  int window_days = 7;
  std::uint64_t seed = 7;
  double progress_band = 0.05;
  std::optional<MealType> meal = MealType::Breakfast;
  std::string question = "What should I eat for breakfast?";

  /// Throws ValidationError when thresholds or numeric fields are invalid.
  void validate() const;
};

/// Applies one `key = value` setting: log, profile, rules, catalog,
/// out-dir, window, seed, progress-band, meal, question or
/// thresholds.<field>. Throws ValidationError for unknown keys or bad values.
void apply_setting(PipelineConfig& config, const std::string& key, const std::string& value);

/// Applies every `key = value` line of a config file. Blank lines and lines
/// starting with `#` are skipped; values may be double-quoted.
void apply_config_text(PipelineConfig& config, std::string_view text);

/// Throws IoError.
std::string read_file(const std::string& path);
/// Creates parent directories as needed. Throws IoError.
void write_file(const std::string& path, std::string_view content);

/// Loads a .rule file, every .rule file in a directory (sorted by name), or
/// the built-ins for an empty path.
std::vector<guidelines::GuidelineRule> load_rules(const std::string& path);

UserProfile load_profile(std::string_view json_text);

/// Parses and validates a log; throws ValidationError when the log has
/// duplicate entries.
FoodLog ingest(std::string_view log_text, const std::string& user_id);

/// Two-space indented JSON followed by a newline.
std::string dump(const nlohmann::json& doc);

struct ReasonOutput {
  reasoner::Classification classification;
  reasoner::ConstraintSet constraints;
  std::string question;
  nlohmann::json report;
};

ReasonOutput reason(const rdf::Graph& kg, const std::vector<guidelines::GuidelineRule>& rules,
                    const std::string& question);

/// Reads either a constraint set document or a reason report (whose
/// "constraints" member is used).
reasoner::ConstraintSet constraints_from_document(std::string_view json_text);

struct PipelineResult {
  FoodLog log;
  UserProfile profile;
  tss::PatternSet patterns;
  rdf::Graph kg;
  ReasonOutput reasoned;
  std::vector<recommend::RankedRecipe> recommendations;
  recommend::RecipeCatalog catalog;
  /// Output file name -> contents, in write order.
  std::vector<std::pair<std::string, std::string>> files;
};

/// Runs every stage in memory. `catalog_text` may be empty.
PipelineResult run(std::string_view log_text, std::string_view profile_text, std::string_view catalog_text,
                   const std::vector<guidelines::GuidelineRule>& rules, const PipelineConfig& config);

/// Reads the configured inputs, runs every stage and writes the outputs
/// into `config.out_dir`.
PipelineResult run_files(const PipelineConfig& config);

}  // namespace phkg::pipeline
