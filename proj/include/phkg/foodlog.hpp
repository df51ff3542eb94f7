#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phkg/date.hpp"

namespace phkg {

enum class MealType : std::uint8_t { Breakfast, Lunch, Dinner, Snack };

inline constexpr std::array kMealTypes = {MealType::Breakfast, MealType::Lunch,
                                          MealType::Dinner, MealType::Snack};

/// Lowercase name: "breakfast", "lunch", ...
std::string_view meal_name(MealType meal);
/// Case-insensitive; throws ValidationError for anything else.
MealType parse_meal(std::string_view name);

enum class Nutrient : std::uint8_t { Carbohydrates, Fat, Protein, Calories };

inline constexpr std::array kNutrients = {Nutrient::Carbohydrates, Nutrient::Fat,
                                          Nutrient::Protein, Nutrient::Calories};

/// Lowercase plural name: "carbohydrates", "fat", "protein", "calories".
std::string_view nutrient_name(Nutrient nutrient);
Nutrient parse_nutrient(std::string_view name);

/// Non-negative nutrient amount with 0.1 resolution, stored as an integer
/// count of tenths so sums are exact.
class Quantity {
 public:
  constexpr Quantity() = default;
  /// Rounds to the nearest tenth. Throws ValidationError for negative or
  /// non-finite input.
  static Quantity from_double(double value);
  static constexpr Quantity from_tenths(std::int64_t tenths) { return Quantity(tenths); }

  double value() const { return static_cast<double>(tenths_) / 10.0; }
  std::int64_t tenths() const { return tenths_; }
  /// One decimal place, e.g. "54.0".
  std::string str() const;

  Quantity operator+(Quantity o) const { return Quantity(tenths_ + o.tenths_); }
  Quantity& operator+=(Quantity o) {
    tenths_ += o.tenths_;
    return *this;
  }
  auto operator<=>(const Quantity&) const = default;

 private:
  constexpr explicit Quantity(std::int64_t tenths) : tenths_(tenths) {}
  std::int64_t tenths_ = 0;
};

struct NutrientVector {
  Quantity calories;
  Quantity carbohydrates_g;
  Quantity fat_g;
  Quantity protein_g;

  Quantity get(Nutrient n) const;
  bool is_zero() const { return *this == NutrientVector{}; }

  NutrientVector operator+(const NutrientVector& o) const;
  NutrientVector& operator+=(const NutrientVector& o);
  bool operator==(const NutrientVector&) const = default;
};

struct MealEntry {
  Date date;
  MealType meal = MealType::Breakfast;
  std::vector<std::string> foods;
  NutrientVector nutrients;

  bool operator==(const MealEntry&) const = default;
};

/// Meal entries for one user, sorted by (date, meal slot).
class FoodLog {
 public:
  FoodLog() = default;
  FoodLog(std::string user_id, std::vector<MealEntry> entries);

  const std::string& user_id() const { return user_id_; }
  const std::vector<MealEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  bool operator==(const FoodLog&) const = default;

 private:
  std::string user_id_ = "user";
  std::vector<MealEntry> entries_;
};

struct DayNutrients {
  Date date;
  NutrientVector total;
  std::map<MealType, NutrientVector> per_meal;
  int meals_logged = 0;
};

struct LogValidation {
  std::vector<std::string> violations;  // duplicates; make the log unusable
  std::vector<std::string> warnings;    // calendar gaps
  bool ok() const { return violations.empty(); }
};

/// Parses a JSON-lines or CSV log document (detected from the first
/// non-blank character). Throws ParseError naming the record and field.
FoodLog parse_log(std::string_view text, std::string user_id = "user");

/// JSON-lines rendering; `parse_log(write_log(log), log.user_id()) == log`.
std::string write_log(const FoodLog& log);

LogValidation validate_log(const FoodLog& log);

/// One entry per distinct logged date, in date order.
std::vector<DayNutrients> daily_totals(const FoodLog& log);

struct MealTarget {
  double carbohydrates_g = 0;
  double fat_g = 0;
  double protein_g = 0;
  /// 0 derives calories from macros (4/9/4 kcal per gram).
  double calories = 0;
};

struct GenSpec {
  std::string user_id = "user";
  Date start = Date::from_ymd(2021, 9, 1);
  int num_days = 35;
  std::map<MealType, MealTarget> meals = {
      {MealType::Breakfast, {40, 15, 20, 0}},
      {MealType::Lunch, {45, 20, 30, 0}},
      {MealType::Dinner, {50, 25, 35, 0}},
  };
  /// Relative jitter applied to carbs when `consistent_carbs` is set.
  double carb_jitter = 0.1;
  /// Relative jitter applied to carbs otherwise.
  double free_carb_jitter = 0.9;
  double fat_jitter = 0.2;
  double protein_jitter = 0.2;
  double calorie_jitter = 0.1;

  bool consistent_carbs = false;
  bool low_carb_high_fat = false;
  double skip_breakfast_probability = 0.0;

  /// Daily carb cap the low-carb/high-fat mode must stay under.
  double low_carb_max_g_per_day = 130.0;

  std::uint64_t seed = 7;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
};

/// Deterministic for a fixed spec. Throws ValidationError for an invalid
/// spec and DataInconsistency for jointly unsatisfiable toggles.
FoodLog generate_synthetic_log(const GenSpec& spec);

}  // namespace phkg
