#pragma once

// Temporal pattern mining over daily nutrient series: coefficient-of-
// variation consistency, per-day diet labels and their frequencies, and
// co-occurrence goals. Produces structured patterns; turning them into RDF
// is the builder's job.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phkg/foodlog.hpp"

namespace phkg::tss {

struct Granularity {
  /// Empty for daily totals, otherwise one meal slot.
  std::optional<MealType> meal;

  static Granularity daily() { return {}; }
  static Granularity per_meal(MealType m) { return {m}; }
  bool is_daily() const { return !meal.has_value(); }
  /// "daily" or the meal name.
  std::string name() const;

  auto operator<=>(const Granularity&) const = default;
};

/// Inclusive date range.
struct Window {
  Date start;
  Date end;
  Granularity granularity;

  bool contains(Date d) const { return start <= d && d <= end; }
  long length_days() const { return end - start + 1; }
  auto operator<=>(const Window&) const = default;
};

struct Thresholds {
  double low_carb_max_g_per_day = 130.0;
  double high_carb_energy_fraction = 0.50;
  double low_fat_energy_fraction = 0.25;
  double high_fat_energy_fraction = 0.40;
  double cv_consistent_max = 0.25;
  /// Strict lower bound for "usually".
  double usually_fraction = 0.5;

  /// Throws ValidationError when a field violates its range.
  void validate() const;
  /// Sets a field by its name; throws ValidationError for unknown names.
  void set(const std::string& name, double value);
  static const std::vector<std::string>& field_names();
  double get(const std::string& name) const;
};

enum class DietLabel : std::uint8_t { LowCarbDiet, HighCarbDiet, LowFatDiet, HighFatDiet };

inline constexpr DietLabel kDietLabels[] = {DietLabel::LowCarbDiet, DietLabel::HighCarbDiet,
                                             DietLabel::LowFatDiet, DietLabel::HighFatDiet};

/// "LowCarbDiet", ...
std::string label_name(DietLabel label);
DietLabel parse_label(const std::string& name);

/// Small set of diet labels.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<DietLabel> labels) {
    for (auto l : labels) insert(l);
  }
  void insert(DietLabel l) { bits_ |= bit(l); }
  bool contains(DietLabel l) const { return (bits_ & bit(l)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::vector<DietLabel> labels() const;
  bool operator==(const LabelSet&) const = default;

 private:
  static std::uint8_t bit(DietLabel l) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(l)); }
  std::uint8_t bits_ = 0;
};

struct ConsistencyPattern {
  Nutrient nutrient = Nutrient::Carbohydrates;
  Window window;
  double value = 0;  // coefficient of variation
  bool consistent = false;
  bool partial_window = false;
  std::size_t points = 0;
};

struct DietLabelFrequency {
  DietLabel label = DietLabel::LowCarbDiet;
  Window window;
  double frequency = 0;
  /// frequency > usually_fraction.
  bool habitual = false;
  bool partial_window = false;
};

struct CombinedGoal {
  std::pair<DietLabel, DietLabel> participants{DietLabel::LowCarbDiet, DietLabel::HighFatDiet};
  Window window;
  bool holds = false;
  double co_occurrence_fraction = 0;
  bool partial_window = false;
};

struct MinedWindow {
  Window window;
  bool partial = false;
  std::size_t data_days = 0;
};

struct PatternSet {
  std::vector<MinedWindow> windows;
  std::vector<ConsistencyPattern> consistency;
  std::vector<DietLabelFrequency> frequencies;
  std::vector<CombinedGoal> goals;

  bool empty() const { return consistency.empty() && frequencies.empty() && goals.empty(); }
};

/// Population standard deviation over mean. Throws InsufficientData for
/// fewer than two points, UndefinedStatistic for a zero mean and
/// ValidationError for negative or non-finite values.
double coefficient_of_variation(std::span<const double> series);

/// Labels one day. Throws DataInconsistency for a zero-calorie day with
/// nonzero macros or when mutually exclusive labels both fire.
LabelSet classify_day(const DayNutrients& day, const Thresholds& t);

DietLabelFrequency pattern_frequency(std::span<const DayNutrients> days, DietLabel label,
                                     const Thresholds& t, const Window& w);

ConsistencyPattern detect_consistency(std::span<const DayNutrients> days, Nutrient nutrient,
                                      const Window& w, const Thresholds& t,
                                      const Granularity& granularity);

CombinedGoal detect_combined_goal(std::span<const DayNutrients> days,
                                  std::pair<DietLabel, DietLabel> labels, const Window& w,
                                  const Thresholds& t);

/// Windows of `window_length_days` tiled backwards from the last logged date.
/// The earliest window is partial when the log length is not a multiple of
/// the window length; it is clipped to the first logged date and flagged.
std::vector<MinedWindow> tile_windows(std::span<const DayNutrients> days, int window_length_days);

/// Throws InsufficientData for an empty log.
PatternSet mine_patterns(const FoodLog& log, const Thresholds& t, int window_length_days = 7);

}  // namespace phkg::tss
