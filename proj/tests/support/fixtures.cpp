#include "fixtures.hpp"

namespace fixture {

NutrientVector macros(double carbs, double fat, double protein, double calories) {
  if (calories == 0) calories = carbs * 4 + fat * 9 + protein * 4;
  NutrientVector n;
  n.carbohydrates_g = phkg::Quantity::from_double(carbs);
  n.fat_g = phkg::Quantity::from_double(fat);
  n.protein_g = phkg::Quantity::from_double(protein);
  n.calories = phkg::Quantity::from_double(calories);
  return n;
}

FoodLog make_log(Date start, int days, const std::function<DayMeals(int)>& day, const std::string& user) {
  std::vector<phkg::MealEntry> entries;
  for (int i = 0; i < days; ++i) {
    for (const auto& [meal, nutrients] : day(i)) {
      phkg::MealEntry e;
      e.date = start + i;
      e.meal = meal;
      e.foods = {"meal " + std::to_string(i)};
      e.nutrients = nutrients;
      entries.push_back(e);
    }
  }
  return FoodLog(user, std::move(entries));
}

FoodLog cv_reference_log() {
  return make_log(Date::from_ymd(2021, 9, 23), 7, [](int i) -> DayMeals {
    if (i == 0) return {{MealType::Breakfast, macros(199, 10, 20, 966)}};
    if (i == 6) return {{MealType::Breakfast, macros(1, 30, 25, 374)}};
    return {};
  });
}

FoodLog lchf_log() {
  return make_log(Date::from_ymd(2021, 9, 23), 7, [](int i) -> DayMeals {
    double c = 10 + i;
    return {{MealType::Breakfast, macros(c, 35, 25)},
            {MealType::Lunch, macros(c + 5, 40, 30)},
            {MealType::Dinner, macros(c + 10, 45, 35)}};
  });
}

FoodLog high_carb_low_fat_log() {
  return make_log(Date::from_ymd(2021, 9, 1), 7, [](int i) -> DayMeals {
    double c = 80 + (i % 3);
    return {{MealType::Breakfast, macros(c, 5, 20)},
            {MealType::Lunch, macros(c, 5, 20)},
            {MealType::Dinner, macros(c, 5, 20)}};
  });
}

FoodLog erratic_carb_log() {
  return make_log(Date::from_ymd(2021, 9, 1), 7, [](int i) -> DayMeals {
    double c = i % 2 == 0 ? 20 : 80;
    return {{MealType::Breakfast, macros(c, 30, 30)},
            {MealType::Lunch, macros(c, 30, 30)},
            {MealType::Dinner, macros(c, 30, 30)}};
  });
}

FoodLog steady_carb_log(int days) {
  phkg::GenSpec spec;
  spec.num_days = days;
  spec.consistent_carbs = true;
  return phkg::generate_synthetic_log(spec);
}

phkg::UserProfile diabetic(bool fixed_insulin, std::vector<std::string> likes) {
  phkg::UserProfile p;
  p.diabetes_status = phkg::DiabetesStatus::Diabetes;
  p.fixed_insulin_dosage = fixed_insulin;
  p.likes = std::move(likes);
  p.normalize();
  return p;
}

phkg::UserProfile non_diabetic() {
  phkg::UserProfile p;
  p.likes = {"mediterranean"};
  p.normalize();
  return p;
}

namespace {

const char* kPrefixes =
    "@prefix : <https://w3id.org/pho-example/user/> .\n"
    "@prefix prov: <http://www.w3.org/ns/prov#> .\n"
    "@prefix sio: <http://semanticscience.org/resource/> .\n"
    "@prefix stato: <http://purl.obolibrary.org/obo/STATO_> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

}  // namespace

const std::string& cv_reference_turtle() {
  static const std::string text = std::string(kPrefixes) +
                                  ":user a prov:Person.\n"
                                  ":user sio:hasAttribute :ConsistentCarbohydrateIntake.\n"
                                  ":ConsistentCarbohydrateIntake a stato:coefficientOfVariation;\n"
                                  "     sio:hasValue \"0.99\"^^xsd:float;\n"
                                  "     prov:startedAtTime \"2021-09-23T00:00:00-00:00\"^^xsd:dateTime;\n"
                                  "     prov:endedAtTime \"2021-09-30T00:00:00-00:00\"^^xsd:dateTime.\n";
  return text;
}

const std::string& lchf_reference_turtle() {
  static const std::string text = std::string(kPrefixes) +
                                  ":user sio:hasAttribute :LowCarbDiet, :HighFatDiet.\n"
                                  ":LowCarbDiet sio:frequency \"1.0\"^^xsd:float.\n"
                                  ":HighFatDiet sio:frequency \"1.0\"^^xsd:float.\n"
                                  ":user sio:hasAttribute :LowCarbHighFatNutrientIntakeGoal.\n"
                                  ":LowCarbHighFatNutrientIntakeGoal\n"
                                  "    sio:hasParticipant :LowCarbDiet, :HighFatDiet;\n"
                                  "    sio:hasValue \"true\"^^xsd:boolean.\n";
  return text;
}

std::string data_path(const std::string& name) { return std::string(PHKG_DATA_DIR) + "/" + name; }

std::string fixture_path(const std::string& name) { return std::string(PHKG_FIXTURES_DIR) + "/" + name; }

}  // namespace fixture
