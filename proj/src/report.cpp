#include "phkg/report.hpp"

#include "phkg/error.hpp"

namespace phkg::report {

namespace {

json window_json(const tss::Window& w) {
  return {{"start", w.start.iso()}, {"end", w.end.iso()}, {"granularity", w.granularity.name()}};
}

std::vector<std::string> strings(const json& doc, const char* key) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  for (const auto& s : doc.at(key)) out.push_back(s.get<std::string>());
  return out;
}

}  // namespace

json patterns_json(const tss::PatternSet& p) {
  json windows = json::array();
  for (const auto& w : p.windows)
    windows.push_back({{"start", w.window.start.iso()},
                       {"end", w.window.end.iso()},
                       {"partial", w.partial},
                       {"data_days", w.data_days}});
  json consistency = json::array();
  for (const auto& c : p.consistency)
    consistency.push_back({{"nutrient", nutrient_name(c.nutrient)},
                           {"window", window_json(c.window)},
                           {"cv", c.value},
                           {"consistent", c.consistent},
                           {"partial_window", c.partial_window},
                           {"points", c.points}});
  json frequencies = json::array();
  for (const auto& f : p.frequencies)
    frequencies.push_back({{"label", tss::label_name(f.label)},
                           {"window", window_json(f.window)},
                           {"frequency", f.frequency},
                           {"habitual", f.habitual},
                           {"partial_window", f.partial_window}});
  json goals = json::array();
  for (const auto& g : p.goals)
    goals.push_back({{"participants", {tss::label_name(g.participants.first), tss::label_name(g.participants.second)}},
                     {"window", window_json(g.window)},
                     {"holds", g.holds},
                     {"co_occurrence_fraction", g.co_occurrence_fraction},
                     {"partial_window", g.partial_window}});
  return {{"windows", windows}, {"consistency", consistency}, {"frequencies", frequencies}, {"goals", goals}};
}

json payload_json(const guidelines::ConstraintPayload& payload) {
  return json::parse(guidelines::canonical_payload(payload));
}

json constraints_json(const reasoner::ConstraintSet& cs) {
  json constraints = json::array();
  for (const auto& c : cs.constraints) constraints.push_back({{"rule", c.rule_id}, {"payload", payload_json(c.payload)}});
  return {{"diabetes_status", diabetes_status_name(cs.diabetes_status)},
          {"likes", cs.likes},
          {"dislikes", cs.dislikes},
          {"allergies", cs.allergies},
          {"constraints", constraints}};
}

reasoner::ConstraintSet constraints_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("constraint set must be a JSON object");
  reasoner::ConstraintSet cs;
  try {
    cs.diabetes_status = parse_diabetes_status(doc.value("diabetes_status", std::string("none")));
    cs.likes = strings(doc, "likes");
    cs.dislikes = strings(doc, "dislikes");
    cs.allergies = strings(doc, "allergies");
    if (doc.contains("constraints")) {
      for (const auto& c : doc.at("constraints")) {
        cs.constraints.push_back(
            {c.value("rule", std::string()), guidelines::parse_payload(c.at("payload").dump())});
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed constraint set: ") + e.what());
  }
  return cs;
}

json verdict_json(const reasoner::ComplianceVerdict& v) {
  json evidence = json::array();
  for (const auto& t : v.evidence) evidence.push_back(t.value());
  return {{"rule", v.rule_id},
          {"applicable", v.applicable},
          {"compliant", v.compliant ? json(*v.compliant) : json(nullptr)},
          {"evidence", evidence}};
}

json directive_json(const reasoner::Directive& d) {
  return {{"rule", d.rule_id},
          {"node", d.node.value()},
          {"class", d.directive_class.value()},
          {"recommendation", d.recommendation_node.value()},
          {"recommendation_class", d.recommendation_class.value()},
          {"constraint", payload_json(d.constraint)},
          {"fired_because", reasoner::fired_because_name(d.fired_because)}};
}

json reason_report(const reasoner::Classification& result, const reasoner::ConstraintSet& cs,
                   const std::string& augmented_question) {
  const auto user = reasoner::find_user(result.graph);
  json verdicts = json::array();
  for (const auto& v : result.verdicts) verdicts.push_back(verdict_json(v));
  json directives = json::array();
  for (const auto& d : result.directives) directives.push_back(directive_json(d));
  auto start = reasoner::current_window_start(result.graph, user);
  return {{"user", user.value()},
          {"window_start", start ? json(*start) : json(nullptr)},
          {"verdicts", verdicts},
          {"directives", directives},
          {"constraints", constraints_json(cs)},
          {"question", augmented_question}};
}

}  // namespace phkg::report
