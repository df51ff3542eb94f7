#include "phkg/foodlog.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "phkg/error.hpp"
#include "phkg/text.hpp"

namespace phkg {

using nlohmann::json;

std::string_view meal_name(MealType meal) {
  switch (meal) {
    case MealType::Breakfast: return "breakfast";
    case MealType::Lunch: return "lunch";
    case MealType::Dinner: return "dinner";
    case MealType::Snack: return "snack";
  }
  return "?";
}

MealType parse_meal(std::string_view name) {
  std::string lower = text::to_lower(text::trim(name));
  for (auto m : kMealTypes)
    if (lower == meal_name(m)) return m;
  throw ValidationError("unknown meal type '" + std::string(name) + "'");
}

std::string_view nutrient_name(Nutrient nutrient) {
  switch (nutrient) {
    case Nutrient::Carbohydrates: return "carbohydrates";
    case Nutrient::Fat: return "fat";
    case Nutrient::Protein: return "protein";
    case Nutrient::Calories: return "calories";
  }
  return "?";
}

Nutrient parse_nutrient(std::string_view name) {
  std::string lower = text::to_lower(text::trim(name));
  if (lower == "carbohydrate" || lower == "carbs") lower = "carbohydrates";
  for (auto n : kNutrients)
    if (lower == nutrient_name(n)) return n;
  throw ValidationError("unknown nutrient '" + std::string(name) + "'");
}

Quantity Quantity::from_double(double value) {
  if (!std::isfinite(value)) throw ValidationError("non-finite nutrient");
  if (value < 0) throw ValidationError("negative nutrient");
  return Quantity(std::llround(value * 10.0));
}

std::string Quantity::str() const {
  return std::to_string(tenths_ / 10) + "." + std::to_string(tenths_ % 10);
}

Quantity NutrientVector::get(Nutrient n) const {
  switch (n) {
    case Nutrient::Carbohydrates: return carbohydrates_g;
    case Nutrient::Fat: return fat_g;
    case Nutrient::Protein: return protein_g;
    case Nutrient::Calories: return calories;
  }
  return {};
}

NutrientVector NutrientVector::operator+(const NutrientVector& o) const {
  NutrientVector r = *this;
  r += o;
  return r;
}

NutrientVector& NutrientVector::operator+=(const NutrientVector& o) {
  calories += o.calories;
  carbohydrates_g += o.carbohydrates_g;
  fat_g += o.fat_g;
  protein_g += o.protein_g;
  return *this;
}

FoodLog::FoodLog(std::string user_id, std::vector<MealEntry> entries)
    : user_id_(std::move(user_id)), entries_(std::move(entries)) {
  std::stable_sort(entries_.begin(), entries_.end(), [](const MealEntry& a, const MealEntry& b) {
    return std::tie(a.date, a.meal) < std::tie(b.date, b.meal);
  });
}

namespace {

ParseError record_error(std::size_t record, std::size_t line, const std::string& field,
                        const std::string& what) {
  return ParseError("record " + std::to_string(record) + ": field '" + field + "': " + what, line, 1);
}

Quantity quantity_field(double value, std::size_t record, std::size_t line, const char* field) {
  try {
    return Quantity::from_double(value);
  } catch (const ValidationError& e) {
    throw record_error(record, line, field, e.what());
  }
}

constexpr const char* kNutrientFields[] = {"calories", "carbohydrates_g", "fat_g", "protein_g"};

void set_nutrient(NutrientVector& v, int index, Quantity q) {
  switch (index) {
    case 0: v.calories = q; break;
    case 1: v.carbohydrates_g = q; break;
    case 2: v.fat_g = q; break;
    case 3: v.protein_g = q; break;
  }
}

MealEntry entry_from_json(const json& obj, std::size_t record, std::size_t line) {
  if (!obj.is_object()) throw record_error(record, line, "*", "record is not a JSON object");
  auto need = [&](const char* field) -> const json& {
    auto it = obj.find(field);
    if (it == obj.end()) throw record_error(record, line, field, "missing field");
    return *it;
  };
  MealEntry e;
  const json& date = need("date");
  if (!date.is_string()) throw record_error(record, line, "date", "expected string");
  try {
    e.date = Date::parse(date.get<std::string>());
  } catch (const ValidationError& ex) {
    throw record_error(record, line, "date", ex.what());
  }
  const json& meal = need("meal");
  if (!meal.is_string()) throw record_error(record, line, "meal", "expected string");
  try {
    e.meal = parse_meal(meal.get<std::string>());
  } catch (const ValidationError& ex) {
    throw record_error(record, line, "meal", ex.what());
  }
  const json& foods = need("foods");
  if (!foods.is_array()) throw record_error(record, line, "foods", "expected array of strings");
  for (const auto& f : foods) {
    if (!f.is_string()) throw record_error(record, line, "foods", "expected array of strings");
    e.foods.push_back(f.get<std::string>());
  }
  for (int i = 0; i < 4; ++i) {
    const json& v = need(kNutrientFields[i]);
    if (!v.is_number()) throw record_error(record, line, kNutrientFields[i], "expected number");
    set_nutrient(e.nutrients, i, quantity_field(v.get<double>(), record, line, kNutrientFields[i]));
  }
  return e;
}

// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> csv_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::vector<MealEntry> parse_csv(const std::vector<std::string_view>& lines,
                                 const std::vector<std::size_t>& line_numbers) {
  std::vector<MealEntry> entries;
  if (lines.empty()) return entries;
  auto header = csv_fields(lines[0]);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[text::to_lower(text::trim(header[i]))] = i;
  for (const char* required : {"date", "meal", "foods", "calories", "carbohydrates_g", "fat_g", "protein_g"})
    if (!column.contains(required)) throw ParseError(std::string("CSV header lacks column '") + required + "'", line_numbers[0], 1);

  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto fields = csv_fields(lines[r]);
    std::size_t record = r - 1;
    json obj = json::object();
    auto field = [&](const std::string& name) -> std::string {
      std::size_t idx = column[name];
      if (idx >= fields.size()) throw record_error(record, line_numbers[r], name, "missing field");
      return std::string(text::trim(fields[idx]));
    };
    obj["date"] = field("date");
    obj["meal"] = field("meal");
    json foods = json::array();
    for (auto& f : text::split(field("foods"), ';')) {
      auto t = text::trim(f);
      if (!t.empty()) foods.push_back(std::string(t));
    }
    obj["foods"] = foods;
    for (const char* name : kNutrientFields) {
      std::string raw = field(name);
      try {
        std::size_t used = 0;
        double v = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
        obj[name] = v;
      } catch (const std::logic_error&) {
        throw record_error(record, line_numbers[r], name, "expected number, got '" + raw + "'");
      }
    }
    entries.push_back(entry_from_json(obj, record, line_numbers[r]));
  }
  return entries;
}

}  // namespace

FoodLog parse_log(std::string_view text, std::string user_id) {
  std::vector<std::string_view> lines;
  std::vector<std::size_t> numbers;
  std::size_t line_no = 0;
  for (std::size_t start = 0; start <= text.size();) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text::trim(text.substr(start, end - start));
    if (!line.empty()) {
      lines.push_back(line);
      numbers.push_back(line_no);
    }
    start = end + 1;
  }
  if (lines.empty()) return FoodLog(std::move(user_id), {});

  std::vector<MealEntry> entries;
  if (lines.front().front() == '{') {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      json obj;
      try {
        obj = json::parse(lines[i]);
      } catch (const json::parse_error& e) {
        throw ParseError("record " + std::to_string(i) + ": malformed JSON: " + e.what(), numbers[i], 1);
      }
      entries.push_back(entry_from_json(obj, i, numbers[i]));
    }
  } else {
    entries = parse_csv(lines, numbers);
  }
  return FoodLog(std::move(user_id), std::move(entries));
}

std::string write_log(const FoodLog& log) {
  std::ostringstream out;
  for (const auto& e : log.entries()) {
    // Written by hand so numbers keep their one-decimal form.
    json foods = e.foods;
    out << "{\"date\":\"" << e.date.iso() << "\",\"meal\":\"" << meal_name(e.meal)
        << "\",\"foods\":" << foods.dump() << ",\"calories\":" << e.nutrients.calories.str()
        << ",\"carbohydrates_g\":" << e.nutrients.carbohydrates_g.str()
        << ",\"fat_g\":" << e.nutrients.fat_g.str() << ",\"protein_g\":" << e.nutrients.protein_g.str()
        << "}\n";
  }
  return out.str();
}

LogValidation validate_log(const FoodLog& log) {
  LogValidation result;
  const auto& entries = log.entries();
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].date == entries[i - 1].date && entries[i].meal == entries[i - 1].meal)
      result.violations.push_back("duplicate " + std::string(meal_name(entries[i].meal)) +
                                  " entry on " + entries[i].date.iso() + " (record " +
                                  std::to_string(i) + ")");
  }
  for (std::size_t i = 1; i < entries.size(); ++i) {
    long gap = entries[i].date - entries[i - 1].date;
    if (gap > 1) {
      Date first = entries[i - 1].date + 1;
      Date last = entries[i].date - 1;
      result.warnings.push_back(gap == 2 ? "no meals logged on " + first.iso()
                                         : "no meals logged from " + first.iso() + " to " + last.iso());
    }
  }
  return result;
}

std::vector<DayNutrients> daily_totals(const FoodLog& log) {
  std::vector<DayNutrients> days;
  for (const auto& e : log.entries()) {
    if (days.empty() || days.back().date != e.date) {
      days.push_back(DayNutrients{e.date, {}, {}, 0});
    }
    auto& day = days.back();
    day.total += e.nutrients;
    auto [it, fresh] = day.per_meal.try_emplace(e.meal, e.nutrients);
    if (fresh) {
      ++day.meals_logged;
    } else {
      it->second += e.nutrients;
    }
  }
  return days;
}

// ---------------------------------------------------------------------------
// Synthetic generation

void GenSpec::validate() const {
  auto fraction = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError(std::string(name) + " must be in [0,1]");
  };
  if (num_days < 1) throw ValidationError("num_days must be >= 1");
  if (meals.empty()) throw ValidationError("at least one meal slot is required");
  fraction(carb_jitter, "carb_jitter");
  fraction(free_carb_jitter, "free_carb_jitter");
  fraction(fat_jitter, "fat_jitter");
  fraction(protein_jitter, "protein_jitter");
  fraction(calorie_jitter, "calorie_jitter");
  fraction(skip_breakfast_probability, "skip_breakfast_probability");
  for (const auto& [meal, t] : meals) {
    for (double v : {t.carbohydrates_g, t.fat_g, t.protein_g, t.calories})
      if (!(v >= 0 && std::isfinite(v)))
        throw ValidationError("meal target for " + std::string(meal_name(meal)) + " must be finite and >= 0");
  }
  if (!(low_carb_max_g_per_day > 0)) throw ValidationError("low_carb_max_g_per_day must be > 0");
}

namespace {

// Fat share of energy the low-carb/high-fat mode enforces. Leaves carbs
// below 45% of energy so a low-carb day can never also read as high-carb.
constexpr double kLchfFatEnergyFraction = 0.55;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

// Draws mean * (1 ± jitter), rounded to a tenth and kept inside the band.
Quantity draw(Rng& rng, double mean, double jitter) {
  double lo = mean * (1.0 - jitter);
  double hi = mean * (1.0 + jitter);
  double v = lo + (hi - lo) * rng.unit();
  auto q = Quantity::from_double(v);
  if (q.value() < lo - 1e-9) q = Quantity::from_tenths(q.tenths() + 1);
  if (q.value() > hi + 1e-9) q = Quantity::from_tenths(q.tenths() - 1);
  return q;
}

Quantity atwater(Quantity carbs, Quantity fat, Quantity protein) {
  return Quantity::from_tenths(carbs.tenths() * 4 + fat.tenths() * 9 + protein.tenths() * 4);
}

const std::map<MealType, std::vector<std::string>>& food_pool() {
  static const std::map<MealType, std::vector<std::string>> pool = {
      {MealType::Breakfast, {"oatmeal", "blueberries", "scrambled eggs", "whole wheat toast", "greek yogurt", "banana", "avocado toast"}},
      {MealType::Lunch, {"turkey sandwich", "lentil soup", "quinoa salad", "grilled chicken", "brown rice", "hummus wrap", "apple"}},
      {MealType::Dinner, {"baked salmon", "roasted vegetables", "whole wheat pasta", "chicken curry", "steamed broccoli", "sweet potato", "tofu stir fry"}},
      {MealType::Snack, {"almonds", "carrot sticks", "string cheese", "apple slices", "popcorn", "peanut butter"}},
  };
  return pool;
}

}  // namespace

FoodLog generate_synthetic_log(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  const double carb_jitter = spec.consistent_carbs ? spec.carb_jitter : spec.free_carb_jitter;
  double carb_scale = 1.0;
  if (spec.low_carb_high_fat) {
    double max_daily = 0;
    for (const auto& [meal, t] : spec.meals) max_daily += t.carbohydrates_g * (1.0 + carb_jitter);
    if (max_daily >= spec.low_carb_max_g_per_day) {
      if (spec.consistent_carbs)
        throw DataInconsistency(
            "consistent_carbs and low_carb_high_fat cannot both hold: daily carbs may reach " +
            std::to_string(max_daily) + " g, not below the low-carb cap of " +
            std::to_string(spec.low_carb_max_g_per_day) + " g");
      carb_scale = 0.8 * spec.low_carb_max_g_per_day / max_daily;
    }
  }

  std::vector<MealEntry> entries;
  for (int d = 0; d < spec.num_days; ++d) {
    Date date = spec.start + d;
    std::vector<MealEntry> day;
    for (const auto& [meal, target] : spec.meals) {
      if (meal == MealType::Breakfast && rng.unit() < spec.skip_breakfast_probability) continue;
      MealEntry e;
      e.date = date;
      e.meal = meal;
      const auto& pool = food_pool().at(meal);
      std::size_t first = rng.index(pool.size());
      std::size_t second = (first + 1 + rng.index(pool.size() - 1)) % pool.size();
      e.foods = {pool[first], pool[second]};
      e.nutrients.carbohydrates_g = draw(rng, target.carbohydrates_g * carb_scale, carb_jitter);
      e.nutrients.fat_g = draw(rng, target.fat_g, spec.fat_jitter);
      e.nutrients.protein_g = draw(rng, target.protein_g, spec.protein_jitter);
      if (target.calories > 0 && !spec.low_carb_high_fat) {
        e.nutrients.calories = draw(rng, target.calories, spec.calorie_jitter);
      } else {
        e.nutrients.calories = atwater(e.nutrients.carbohydrates_g, e.nutrients.fat_g, e.nutrients.protein_g);
      }
      day.push_back(std::move(e));
    }

    if (spec.low_carb_high_fat && !day.empty()) {
      std::int64_t carbs = 0, fat = 0, protein = 0;
      for (const auto& e : day) {
        carbs += e.nutrients.carbohydrates_g.tenths();
        fat += e.nutrients.fat_g.tenths();
        protein += e.nutrients.protein_g.tenths();
      }
      // 9f >= share * (4c + 9f + 4p)  <=>  f >= share * 4(c + p) / (9 (1 - share))
      double needed = kLchfFatEnergyFraction * 4.0 * static_cast<double>(carbs + protein) /
                      (9.0 * (1.0 - kLchfFatEnergyFraction));
      if (static_cast<double>(fat) < needed) {
        auto extra = static_cast<std::int64_t>(std::ceil(needed)) - fat;
        auto per_meal = extra / static_cast<std::int64_t>(day.size()) + 1;
        for (auto& e : day) {
          e.nutrients.fat_g = Quantity::from_tenths(e.nutrients.fat_g.tenths() + per_meal);
        }
      }
      for (auto& e : day)
        e.nutrients.calories = atwater(e.nutrients.carbohydrates_g, e.nutrients.fat_g, e.nutrients.protein_g);
    }
    for (auto& e : day) entries.push_back(std::move(e));
  }
  return FoodLog(spec.user_id, std::move(entries));
}

}  // namespace phkg
