#include "phkg/recommend.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <nlohmann/json.hpp>

#include "phkg/error.hpp"
#include "phkg/text.hpp"

namespace phkg::recommend {

using nlohmann::json;

namespace {

const std::vector<std::size_t> kNone;

}  // namespace

RecipeCatalog::RecipeCatalog(std::vector<Recipe> recipes) : recipes_(std::move(recipes)) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < recipes_.size(); ++i) {
    const auto& r = recipes_[i];
    if (text::trim(r.name).empty()) throw ValidationError("recipe " + std::to_string(i) + " has no name");
    if (!names.insert(text::to_lower(r.name)).second) throw ValidationError("duplicate recipe name '" + r.name + "'");
    if (!(r.carbohydrates_g >= 0) || !(r.calories >= 0))
      throw ValidationError("recipe '" + r.name + "' has a negative nutrient");
    for (auto m : r.meal_types) by_meal_[m].push_back(i);
    for (const auto& t : r.tags) by_tag_[text::to_lower(t)].push_back(i);
  }
}

const std::vector<std::size_t>& RecipeCatalog::by_meal(MealType meal) const {
  auto it = by_meal_.find(meal);
  return it == by_meal_.end() ? kNone : it->second;
}

const std::vector<std::size_t>& RecipeCatalog::by_tag(std::string_view tag) const {
  auto it = by_tag_.find(text::to_lower(tag));
  return it == by_tag_.end() ? kNone : it->second;
}

const Recipe* RecipeCatalog::find(std::string_view name) const {
  const std::string key = text::to_lower(name);
  for (const auto& r : recipes_)
    if (text::to_lower(r.name) == key) return &r;
  return nullptr;
}

namespace {

std::set<std::string> lower_set(const json& obj, const char* key, const std::string& recipe) {
  std::set<std::string> out;
  if (!obj.contains(key)) return out;
  if (!obj[key].is_array()) throw ValidationError("recipe '" + recipe + "': '" + key + "' must be an array");
  for (const auto& s : obj[key]) {
    if (!s.is_string()) throw ValidationError("recipe '" + recipe + "': '" + key + "' must hold strings");
    out.insert(text::to_lower(text::trim(s.get<std::string>())));
  }
  return out;
}

double amount(const json& obj, const char* key, const std::string& recipe) {
  if (!obj.contains(key)) return 0;
  if (!obj[key].is_number()) throw ValidationError("recipe '" + recipe + "': '" + key + "' must be a number");
  double x = obj[key].get<double>();
  if (x < 0) throw ValidationError("recipe '" + recipe + "' has a negative nutrient '" + key + "'");
  return x;
}

}  // namespace

RecipeCatalog load_catalog(std::string_view json_text) {
  if (text::trim(json_text).empty()) return RecipeCatalog{};
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // nlohmann reports a 1-based byte offset; turn it into line and column.
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, json_text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (json_text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string("catalog is not valid JSON: ") + e.what(), line, column);
  }
  if (!doc.is_array()) throw ValidationError("catalog must be a JSON array of recipes");
  std::vector<Recipe> recipes;
  for (const auto& obj : doc) {
    if (!obj.is_object() || !obj.contains("name") || !obj["name"].is_string())
      throw ValidationError("catalog entry " + std::to_string(recipes.size()) + " lacks a string 'name'");
    Recipe r;
    r.name = obj["name"].get<std::string>();
    for (const auto& m : lower_set(obj, "meal_types", r.name)) r.meal_types.insert(parse_meal(m));
    r.tags = lower_set(obj, "tags", r.name);
    r.ingredients = lower_set(obj, "ingredients", r.name);
    r.allergens = lower_set(obj, "allergens", r.name);
    r.carbohydrates_g = amount(obj, "carbohydrates_g", r.name);
    r.calories = amount(obj, "calories", r.name);
    recipes.push_back(std::move(r));
  }
  return RecipeCatalog(std::move(recipes));
}

bool mentions(std::string_view text, std::string_view phrase) {
  if (phrase.empty()) return false;
  auto boundary = [](char c) { return !std::isalnum(static_cast<unsigned char>(c)); };
  for (std::size_t pos = text.find(phrase); pos != std::string_view::npos; pos = text.find(phrase, pos + 1)) {
    bool left = pos == 0 || boundary(text[pos - 1]);
    std::size_t end = pos + phrase.size();
    bool right = end == text.size() || boundary(text[end]);
    if (left && right) return true;
  }
  return false;
}

namespace {

bool any_mentions(const std::set<std::string>& items, const std::string& phrase) {
  return std::any_of(items.begin(), items.end(), [&](const std::string& s) { return mentions(s, phrase); });
}

bool admissible(const Recipe& r, const reasoner::ConstraintSet& cs, std::optional<MealType> meal,
                const guidelines::NutrientConstraint* carbs) {
  if (meal && !r.meal_types.contains(*meal)) return false;
  if (carbs && (r.carbohydrates_g < carbs->per_meal_lower || r.carbohydrates_g > carbs->per_meal_upper))
    return false;
  for (const auto& a : cs.allergies) {
    const std::string item = text::to_lower(a);
    if (any_mentions(r.allergens, item) || any_mentions(r.ingredients, item)) return false;
  }
  for (const auto& d : cs.dislikes)
    if (any_mentions(r.ingredients, text::to_lower(d))) return false;
  for (const auto& tag : cs.required_tags())
    if (!r.tags.contains(text::to_lower(tag))) return false;
  return true;
}

}  // namespace

std::vector<RankedRecipe> filter_recipes(const RecipeCatalog& catalog, const reasoner::ConstraintSet& cs,
                                         std::optional<MealType> meal) {
  const auto* carbs = cs.nutrient(Nutrient::Carbohydrates);
  std::vector<RankedRecipe> out;
  for (const auto& r : catalog.recipes()) {
    if (!admissible(r, cs, meal, carbs)) continue;
    RankedRecipe ranked;
    ranked.recipe = &r;
    for (const auto& like : cs.likes)
      if (r.tags.contains(text::to_lower(like))) ranked.matched_tags.push_back(text::to_lower(like));
    if (carbs) ranked.midpoint_distance = std::abs(r.carbohydrates_g - carbs->midpoint());
    out.push_back(std::move(ranked));
  }
  std::sort(out.begin(), out.end(), [](const RankedRecipe& a, const RankedRecipe& b) {
    if (a.matched_tags.size() != b.matched_tags.size()) return a.matched_tags.size() > b.matched_tags.size();
    if (a.midpoint_distance != b.midpoint_distance) return a.midpoint_distance < b.midpoint_distance;
    return a.recipe->name < b.recipe->name;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
  return out;
}

json recommendations_json(const std::vector<RankedRecipe>& ranked) {
  json out = json::array();
  for (const auto& r : ranked)
    out.push_back({{"name", r.recipe->name},
                   {"carbohydrates_g", r.recipe->carbohydrates_g},
                   {"matched_tags", r.matched_tags},
                   {"rank", r.rank}});
  return out;
}

std::string daily_budget_note(const reasoner::ConstraintSet& cs, std::optional<double> consumed_today) {
  const auto* carbs = cs.nutrient(Nutrient::Carbohydrates);
  if (!carbs) return {};
  std::string note = "not to exceed " + rdf::compact_number(carbs->daily_total) + " " + carbs->unit +
                     " carbohydrates per day";
  if (consumed_today) {
    double left = std::max(0.0, carbs->daily_total - *consumed_today);
    note += " (" + rdf::compact_number(left) + " " + carbs->unit + " remaining today)";
  }
  return note;
}

}  // namespace phkg::recommend
