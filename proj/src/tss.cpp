#include "phkg/tss.hpp"

#include <cmath>

#include "phkg/error.hpp"

namespace phkg::tss {

std::string Granularity::name() const {
  return meal ? std::string(meal_name(*meal)) : std::string("daily");
}

void Thresholds::validate() const {
  auto open_fraction = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) throw ValidationError(std::string(name) + " must be in (0,1)");
  };
  if (!(low_carb_max_g_per_day > 0.0) || !std::isfinite(low_carb_max_g_per_day))
    throw ValidationError("low_carb_max_g_per_day must be > 0");
  open_fraction(high_carb_energy_fraction, "high_carb_energy_fraction");
  open_fraction(low_fat_energy_fraction, "low_fat_energy_fraction");
  open_fraction(high_fat_energy_fraction, "high_fat_energy_fraction");
  open_fraction(usually_fraction, "usually_fraction");
  if (!(cv_consistent_max > 0.0) || !std::isfinite(cv_consistent_max))
    throw ValidationError("cv_consistent_max must be > 0");
  if (!(high_fat_energy_fraction > low_fat_energy_fraction))
    throw ValidationError("high_fat_energy_fraction must exceed low_fat_energy_fraction");
}

const std::vector<std::string>& Thresholds::field_names() {
  static const std::vector<std::string> names = {
      "low_carb_max_g_per_day", "high_carb_energy_fraction", "low_fat_energy_fraction",
      "high_fat_energy_fraction", "cv_consistent_max", "usually_fraction"};
  return names;
}

namespace {
double* field_ptr(Thresholds& t, const std::string& name) {
  if (name == "low_carb_max_g_per_day") return &t.low_carb_max_g_per_day;
  if (name == "high_carb_energy_fraction") return &t.high_carb_energy_fraction;
  if (name == "low_fat_energy_fraction") return &t.low_fat_energy_fraction;
  if (name == "high_fat_energy_fraction") return &t.high_fat_energy_fraction;
  if (name == "cv_consistent_max") return &t.cv_consistent_max;
  if (name == "usually_fraction") return &t.usually_fraction;
  return nullptr;
}
}  // namespace

void Thresholds::set(const std::string& name, double value) {
  double* p = field_ptr(*this, name);
  if (!p) throw ValidationError("unknown threshold '" + name + "'");
  *p = value;
}

double Thresholds::get(const std::string& name) const {
  double* p = field_ptr(const_cast<Thresholds&>(*this), name);
  if (!p) throw ValidationError("unknown threshold '" + name + "'");
  return *p;
}

std::string label_name(DietLabel label) {
  switch (label) {
    case DietLabel::LowCarbDiet: return "LowCarbDiet";
    case DietLabel::HighCarbDiet: return "HighCarbDiet";
    case DietLabel::LowFatDiet: return "LowFatDiet";
    case DietLabel::HighFatDiet: return "HighFatDiet";
  }
  return "?";
}

DietLabel parse_label(const std::string& name) {
  for (auto l : kDietLabels)
    if (label_name(l) == name) return l;
  throw ValidationError("unknown diet label '" + name + "'");
}

std::vector<DietLabel> LabelSet::labels() const {
  std::vector<DietLabel> out;
  for (auto l : kDietLabels)
    if (contains(l)) out.push_back(l);
  return out;
}

double coefficient_of_variation(std::span<const double> series) {
  if (series.size() < 2)
    throw InsufficientData("coefficient of variation needs at least 2 values, got " +
                           std::to_string(series.size()));
  // Welford's running mean / sum of squared deviations.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double x : series) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("series values must be finite and >= 0");
    ++n;
    double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  if (mean == 0.0) throw UndefinedStatistic("coefficient of variation is undefined for a zero mean");
  return std::sqrt(m2 / static_cast<double>(n)) / mean;
}

LabelSet classify_day(const DayNutrients& day, const Thresholds& t) {
  LabelSet labels;
  const double carbs = day.total.carbohydrates_g.value();
  const double fat = day.total.fat_g.value();
  const double calories = day.total.calories.value();
  if (calories <= 0.0) {
    if (!day.total.is_zero())
      throw DataInconsistency("day " + day.date.iso() + " has zero calories but nonzero macronutrients");
    return labels;
  }
  if (carbs < t.low_carb_max_g_per_day) labels.insert(DietLabel::LowCarbDiet);
  if (carbs * 4.0 / calories >= t.high_carb_energy_fraction) labels.insert(DietLabel::HighCarbDiet);
  const double fat_fraction = fat * 9.0 / calories;
  if (fat_fraction <= t.low_fat_energy_fraction) labels.insert(DietLabel::LowFatDiet);
  if (fat_fraction >= t.high_fat_energy_fraction) labels.insert(DietLabel::HighFatDiet);

  if (labels.contains(DietLabel::LowCarbDiet) && labels.contains(DietLabel::HighCarbDiet))
    throw DataInconsistency("day " + day.date.iso() + " classifies as both LowCarbDiet and HighCarbDiet");
  if (labels.contains(DietLabel::LowFatDiet) && labels.contains(DietLabel::HighFatDiet))
    throw DataInconsistency("day " + day.date.iso() + " classifies as both LowFatDiet and HighFatDiet");
  return labels;
}

namespace {

std::vector<const DayNutrients*> data_days(std::span<const DayNutrients> days, const Window& w) {
  std::vector<const DayNutrients*> out;
  for (const auto& d : days)
    if (w.contains(d.date) && d.meals_logged > 0) out.push_back(&d);
  return out;
}

std::string window_text(const Window& w) { return w.start.iso() + ".." + w.end.iso(); }

}  // namespace

DietLabelFrequency pattern_frequency(std::span<const DayNutrients> days, DietLabel label,
                                     const Thresholds& t, const Window& w) {
  auto in_window = data_days(days, w);
  if (in_window.empty()) throw InsufficientData("no logged days in window " + window_text(w));
  std::size_t hits = 0;
  for (const auto* d : in_window)
    if (classify_day(*d, t).contains(label)) ++hits;
  DietLabelFrequency f;
  f.label = label;
  f.window = Window{w.start, w.end, Granularity::daily()};
  f.frequency = static_cast<double>(hits) / static_cast<double>(in_window.size());
  f.habitual = f.frequency > t.usually_fraction;
  return f;
}

ConsistencyPattern detect_consistency(std::span<const DayNutrients> days, Nutrient nutrient,
                                      const Window& w, const Thresholds& t,
                                      const Granularity& granularity) {
  std::vector<double> series;
  for (const auto* d : data_days(days, w)) {
    if (granularity.is_daily()) {
      series.push_back(d->total.get(nutrient).value());
    } else if (auto it = d->per_meal.find(*granularity.meal); it != d->per_meal.end()) {
      series.push_back(it->second.get(nutrient).value());
    }
  }
  if (series.size() < 2)
    throw InsufficientData("need at least 2 " + granularity.name() + " data points in window " +
                           window_text(w) + ", got " + std::to_string(series.size()));
  ConsistencyPattern p;
  p.nutrient = nutrient;
  p.window = Window{w.start, w.end, granularity};
  p.value = coefficient_of_variation(series);
  p.consistent = p.value <= t.cv_consistent_max;
  p.points = series.size();
  return p;
}

CombinedGoal detect_combined_goal(std::span<const DayNutrients> days,
                                  std::pair<DietLabel, DietLabel> labels, const Window& w,
                                  const Thresholds& t) {
  auto in_window = data_days(days, w);
  if (in_window.empty()) throw InsufficientData("no logged days in window " + window_text(w));
  std::size_t both = 0;
  for (const auto* d : in_window) {
    auto set = classify_day(*d, t);
    if (set.contains(labels.first) && set.contains(labels.second)) ++both;
  }
  CombinedGoal g;
  g.participants = labels;
  g.window = Window{w.start, w.end, Granularity::daily()};
  g.co_occurrence_fraction = static_cast<double>(both) / static_cast<double>(in_window.size());
  g.holds = g.co_occurrence_fraction > t.usually_fraction;
  return g;
}

std::vector<MinedWindow> tile_windows(std::span<const DayNutrients> days, int window_length_days) {
  if (window_length_days < 1) throw ValidationError("window length must be >= 1 day");
  std::vector<MinedWindow> out;
  if (days.empty()) return out;
  const Date first = days.front().date;
  const Date last = days.back().date;
  for (Date end = last; end >= first; end = end - window_length_days) {
    Date start = end - (window_length_days - 1);
    MinedWindow mw;
    mw.partial = start < first;
    mw.window = Window{mw.partial ? first : start, end, Granularity::daily()};
    mw.data_days = data_days(days, mw.window).size();
    out.insert(out.begin(), mw);
  }
  return out;
}

PatternSet mine_patterns(const FoodLog& log, const Thresholds& t, int window_length_days) {
  t.validate();
  if (log.empty()) throw InsufficientData("cannot mine patterns from an empty food log");
  const auto days = daily_totals(log);
  for (const auto& d : days) classify_day(d, t);  // surfaces inconsistent days up front

  PatternSet out;
  out.windows = tile_windows(days, window_length_days);
  for (const auto& mw : out.windows) {
    if (mw.data_days == 0) continue;
    const Window& w = mw.window;

    auto try_consistency = [&](const Granularity& g) {
      try {
        auto p = detect_consistency(days, Nutrient::Carbohydrates, w, t, g);
        p.partial_window = mw.partial;
        out.consistency.push_back(p);
      } catch (const InsufficientData&) {
      } catch (const UndefinedStatistic&) {
      }
    };
    try_consistency(Granularity::daily());
    for (auto meal : kMealTypes) try_consistency(Granularity::per_meal(meal));

    for (auto label : kDietLabels) {
      auto f = pattern_frequency(days, label, t, w);
      f.partial_window = mw.partial;
      out.frequencies.push_back(f);
    }
    auto g = detect_combined_goal(days, {DietLabel::LowCarbDiet, DietLabel::HighFatDiet}, w, t);
    g.partial_window = mw.partial;
    out.goals.push_back(g);
  }
  return out;
}

}  // namespace phkg::tss
