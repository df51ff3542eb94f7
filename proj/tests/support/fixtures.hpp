#pragma once

// Hand-built logs, profiles and reference graphs shared by the unit and
// acceptance tests.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "phkg/builder.hpp"
#include "phkg/foodlog.hpp"
#include "phkg/rdf/graph.hpp"

namespace fixture {

using phkg::Date;
using phkg::FoodLog;
using phkg::MealType;
using phkg::NutrientVector;

/// Calories derived from macros at 4/9/4 kcal per gram unless given.
NutrientVector macros(double carbs, double fat, double protein, double calories = 0);

using DayMeals = std::vector<std::pair<MealType, NutrientVector>>;

/// One entry per meal returned by `day(i)` for i in [0, days).
FoodLog make_log(Date start, int days, const std::function<DayMeals(int)>& day, const std::string& user = "user");

/// Two logged days a week apart whose daily carbohydrates have CV 0.99 over
/// the window 2021-09-23 to 2021-09-29.
FoodLog cv_reference_log();
/// Seven low-carbohydrate, high-fat days from 2021-09-23.
FoodLog lchf_log();
/// Seven days of high-carbohydrate, low-fat meals.
FoodLog high_carb_low_fat_log();
/// Seven days whose carbohydrate amounts swing between 60 and 240 g.
FoodLog erratic_carb_log();
/// 35 generated days with steady carbohydrates.
FoodLog steady_carb_log(int days = 35);

phkg::UserProfile diabetic(bool fixed_insulin, std::vector<std::string> likes = {});
phkg::UserProfile non_diabetic();

/// Reference snippets for the mined patterns, with the `:` prefix bound to the user
/// namespace.
const std::string& cv_reference_turtle();
/// Both low-carb, high-fat snippets as one document so their shared nodes stay linked.
const std::string& lchf_reference_turtle();

/// Absolute path of a file under the repository's data/ or fixtures/
/// directory.
std::string data_path(const std::string& name);
std::string fixture_path(const std::string& name);

}  // namespace fixture
