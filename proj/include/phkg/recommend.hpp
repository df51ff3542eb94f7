#pragma once

// Constraint-filtered recipe recommendation over a local JSON catalog.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "phkg/foodlog.hpp"
#include "phkg/reasoner.hpp"

namespace phkg::recommend {

/// Tags, ingredients and allergens are stored lowercased.
struct Recipe {
  std::string name;
  std::set<MealType> meal_types;
  std::set<std::string> tags;
  std::set<std::string> ingredients;
  std::set<std::string> allergens;
  double carbohydrates_g = 0;
  double calories = 0;
};

class RecipeCatalog {
 public:
  RecipeCatalog() = default;
  /// Throws ValidationError for a duplicate name (case-insensitive), an
  /// empty name or a negative nutrient.
  explicit RecipeCatalog(std::vector<Recipe> recipes);

  const std::vector<Recipe>& recipes() const { return recipes_; }
  std::size_t size() const { return recipes_.size(); }
  bool empty() const { return recipes_.empty(); }
  /// Indexes into recipes() of recipes served at `meal`.
  const std::vector<std::size_t>& by_meal(MealType meal) const;
  /// Indexes into recipes() carrying `tag` (any case).
  const std::vector<std::size_t>& by_tag(std::string_view tag) const;
  const Recipe* find(std::string_view name) const;

 private:
  std::vector<Recipe> recipes_;
  std::map<MealType, std::vector<std::size_t>> by_meal_;
  std::map<std::string, std::vector<std::size_t>> by_tag_;
};

/// Parses a JSON array of recipe objects with fields name, meal_types,
/// tags, ingredients, allergens, carbohydrates_g and calories. Blank input
/// is an empty catalog.
RecipeCatalog load_catalog(std::string_view json_text);

/// True when `phrase` occurs in `text` on word boundaries ("almonds" in
/// "toasted almonds", not "almond" in "almonds"). Both lowercase.
bool mentions(std::string_view text, std::string_view phrase);

struct RankedRecipe {
  const Recipe* recipe = nullptr;
  std::size_t rank = 0;  // 1-based
  std::vector<std::string> matched_tags;
  /// |carbohydrates_g - midpoint| of the carbohydrate range, 0 without one.
  double midpoint_distance = 0;
};

/// Hard filters: meal match (when given), carbohydrates inside the per-meal
/// range of a carbohydrate constraint, no allergy in allergens or
/// ingredients, no disliked item in ingredients, every required tag present.
/// Ranking: more liked tags first, then closer to the carbohydrate range
/// midpoint, then name.
std::vector<RankedRecipe> filter_recipes(const RecipeCatalog& catalog, const reasoner::ConstraintSet& cs,
                                         std::optional<MealType> meal);

/// `[{"name", "carbohydrates_g", "matched_tags", "rank"}, ...]`
nlohmann::json recommendations_json(const std::vector<RankedRecipe>& ranked);

/// Advisory text for the daily carbohydrate budget, e.g. "not to exceed
/// 150 g carbohydrates per day (62.5 g remaining today)". Empty without a
/// carbohydrate constraint. `consumed_today` is taken from the day's log.
std::string daily_budget_note(const reasoner::ConstraintSet& cs, std::optional<double> consumed_today);

}  // namespace phkg::recommend
