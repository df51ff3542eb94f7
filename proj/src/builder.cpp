#include "phkg/builder.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "phkg/error.hpp"
#include "phkg/text.hpp"
#include "phkg/vocab.hpp"

namespace phkg {

using rdf::Term;
using rdf::Triple;
using nlohmann::json;
namespace v = vocab;

std::string diabetes_status_name(DiabetesStatus s) {
  switch (s) {
    case DiabetesStatus::None: return "none";
    case DiabetesStatus::Diabetes: return "diabetes";
    case DiabetesStatus::PreDiabetes: return "prediabetes";
  }
  return "none";
}

DiabetesStatus parse_diabetes_status(const std::string& s) {
  std::string lower = text::to_lower(text::trim(s));
  if (lower == "none" || lower.empty()) return DiabetesStatus::None;
  if (lower == "diabetes" || lower == "diabetic" || lower == "t2d") return DiabetesStatus::Diabetes;
  if (lower == "prediabetes" || lower == "pre-diabetes" || lower == "prediabetic")
    return DiabetesStatus::PreDiabetes;
  throw ValidationError("unknown diabetes status '" + s + "'");
}

namespace {

bool iri_safe(const std::string& id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

void normalize_list(std::vector<std::string>& items, const char* field) {
  for (auto& s : items) {
    s = text::to_lower(text::trim(s));
    if (s.empty()) throw ValidationError(std::string("empty entry in profile field '") + field + "'");
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

std::vector<std::string> string_list(const json& doc, const char* key) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw ValidationError(std::string("profile field '") + key + "' must be an array");
  for (const auto& s : arr) {
    if (!s.is_string()) throw ValidationError(std::string("profile field '") + key + "' must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

}  // namespace

void UserProfile::normalize() {
  if (!iri_safe(user_id)) throw ValidationError("user id '" + user_id + "' is not IRI-safe");
  normalize_list(likes, "likes");
  normalize_list(dislikes, "dislikes");
  normalize_list(allergies, "allergies");
}

UserProfile UserProfile::from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("profile must be a JSON object");
  UserProfile p;
  if (doc.contains("user_id")) p.user_id = doc.at("user_id").get<std::string>();
  if (doc.contains("diabetes_status"))
    p.diabetes_status = parse_diabetes_status(doc.at("diabetes_status").get<std::string>());
  if (doc.contains("fixed_insulin_dosage")) {
    if (!doc.at("fixed_insulin_dosage").is_boolean())
      throw ValidationError("profile field 'fixed_insulin_dosage' must be a boolean");
    p.fixed_insulin_dosage = doc.at("fixed_insulin_dosage").get<bool>();
  }
  p.likes = string_list(doc, "likes");
  p.dislikes = string_list(doc, "dislikes");
  p.allergies = string_list(doc, "allergies");
  p.normalize();
  return p;
}

json UserProfile::to_json() const {
  return json{{"user_id", user_id},
              {"diabetes_status", diabetes_status_name(diabetes_status)},
              {"fixed_insulin_dosage", fixed_insulin_dosage},
              {"likes", likes},
              {"dislikes", dislikes},
              {"allergies", allergies}};
}

Term user_iri(const std::string& user_id) {
  if (!iri_safe(user_id)) throw ValidationError("user id '" + user_id + "' is not IRI-safe");
  return Term::iri(std::string(rdf::kDefaultUserNs) + user_id);
}

Term nutrient_term(Nutrient n) {
  switch (n) {
    case Nutrient::Carbohydrates: return v::food_Carbohydrates;
    case Nutrient::Fat: return v::food_Fat;
    case Nutrient::Protein: return v::food_Protein;
    case Nutrient::Calories: return v::food_Calories;
  }
  return v::food_Carbohydrates;
}

Term label_term(tss::DietLabel l) {
  switch (l) {
    case tss::DietLabel::LowCarbDiet: return v::pho_LowCarbDiet;
    case tss::DietLabel::HighCarbDiet: return v::pho_HighCarbDiet;
    case tss::DietLabel::LowFatDiet: return v::pho_LowFatDiet;
    case tss::DietLabel::HighFatDiet: return v::pho_HighFatDiet;
  }
  return v::pho_LowCarbDiet;
}

Term granularity_term(const tss::Granularity& g) {
  if (g.is_daily()) return v::pho_Daily;
  switch (*g.meal) {
    case MealType::Breakfast: return v::pho_Breakfast;
    case MealType::Lunch: return v::pho_Lunch;
    case MealType::Dinner: return v::pho_Dinner;
    case MealType::Snack: return v::pho_Snack;
  }
  return v::pho_Daily;
}

Term float_literal(double value) {
  return Term::literal(rdf::canonical_float(static_cast<float>(value)), rdf::xsd("float"));
}

Term midnight_literal(Date date) { return Term::literal(date.midnight_timestamp(), rdf::xsd("dateTime")); }

namespace {

Term child(const Term& user, const std::string& path) { return Term::iri(user.value() + "/" + path); }

Term frequency_node(tss::DietLabel label, Date start, const Term& user) {
  return child(user, "pattern/frequency/" + tss::label_name(label) + "/" + start.iso());
}

struct Emitter {
  const Term& user;
  std::vector<Triple> out;

  void add(const Term& s, const Term& p, const Term& o) { out.push_back(Triple{s, p, o}); }

  void window(const Term& node, const tss::Window& w, bool partial) {
    add(user, v::sio_hasAttribute, node);
    add(node, v::prov_startedAtTime, midnight_literal(w.start));
    // End timestamps are exclusive: midnight after the last day.
    add(node, v::prov_endedAtTime, midnight_literal(w.end + 1));
    if (partial) add(node, v::pho_isPartialWindow, Term::boolean(true));
  }

  void operator()(const tss::ConsistencyPattern& p) {
    Term node = pattern_node(p, user);
    window(node, p.window, p.partial_window);
    add(node, v::rdf_type, v::stato_coefficientOfVariation);
    if (p.consistent) add(node, v::rdf_type, v::pho_ConsistentPattern);
    add(node, v::sio_hasValue, float_literal(p.value));
    add(node, v::sio_hasAttribute, nutrient_term(p.nutrient));
    add(node, v::pho_hasGranularity, granularity_term(p.window.granularity));
  }

  void operator()(const tss::DietLabelFrequency& f) {
    Term node = pattern_node(f, user);
    window(node, f.window, f.partial_window);
    add(node, v::rdf_type, label_term(f.label));
    if (f.habitual) add(node, v::rdf_type, v::pho_ConsistentPattern);
    add(node, v::sio_frequency, float_literal(f.frequency));
  }

  void operator()(const tss::CombinedGoal& g) {
    Term node = pattern_node(g, user);
    window(node, g.window, g.partial_window);
    add(node, v::rdf_type, v::pho_NutrientIntakeGoal);
    add(node, v::sio_hasParticipant, frequency_node(g.participants.first, g.window.start, user));
    add(node, v::sio_hasParticipant, frequency_node(g.participants.second, g.window.start, user));
    add(node, v::sio_hasValue, Term::boolean(g.holds));
  }
};

}  // namespace

Term pattern_node(const Pattern& pattern, const Term& user) {
  struct Namer {
    const Term& user;
    Term operator()(const tss::ConsistencyPattern& p) const {
      return child(user, "pattern/consistency/" + std::string(nutrient_name(p.nutrient)) + "-" +
                             p.window.granularity.name() + "/" + p.window.start.iso());
    }
    Term operator()(const tss::DietLabelFrequency& f) const {
      return frequency_node(f.label, f.window.start, user);
    }
    Term operator()(const tss::CombinedGoal& g) const {
      return child(user, "pattern/goal/" + tss::label_name(g.participants.first) + "-" +
                             tss::label_name(g.participants.second) + "/" + g.window.start.iso());
    }
  };
  return std::visit(Namer{user}, pattern);
}

std::vector<Triple> emit_pattern_triples(const Pattern& pattern, const Term& user) {
  Emitter e{user, {}};
  std::visit(e, pattern);
  return std::move(e.out);
}

std::vector<Triple> emit_profile_triples(const UserProfile& profile) {
  Term user = user_iri(profile.user_id);
  std::vector<Triple> out;
  out.push_back({user, v::rdf_type, v::prov_Person});
  if (profile.diabetes_status == DiabetesStatus::Diabetes)
    out.push_back({user, v::prov_wasAssociatedWith, v::doid_Diabetes});
  else if (profile.diabetes_status == DiabetesStatus::PreDiabetes)
    out.push_back({user, v::prov_wasAssociatedWith, v::doid_PreDiabetes});
  if (profile.fixed_insulin_dosage) {
    Term node = child(user, "medication/fixed-insulin-dosage");
    out.push_back({user, v::sio_hasAttribute, node});
    out.push_back({node, v::rdf_type, v::pho_FixedInsulinDosage});
    out.push_back({node, v::rdf_type, v::pho_FixedMedicationDosage});
    out.push_back({node, v::sio_hasAttribute, v::dron_Insulin});
  }
  for (const auto& s : profile.likes) out.push_back({user, v::pho_likes, Term::literal(s)});
  for (const auto& s : profile.dislikes) out.push_back({user, v::pho_dislikes, Term::literal(s)});
  for (const auto& s : profile.allergies) out.push_back({user, v::pho_allergicTo, Term::literal(s)});
  return out;
}

rdf::Graph build_phkg(const tss::PatternSet& patterns, const UserProfile& profile) {
  rdf::Graph g;
  Term user = user_iri(profile.user_id);
  for (const auto& t : emit_profile_triples(profile)) g.insert(t);
  auto add_all = [&](const Pattern& p) {
    for (const auto& t : emit_pattern_triples(p, user)) g.insert(t);
  };
  for (const auto& p : patterns.consistency) add_all(p);
  for (const auto& p : patterns.frequencies) add_all(p);
  for (const auto& p : patterns.goals) add_all(p);
  return g;
}

}  // namespace phkg
