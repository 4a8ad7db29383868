#pragma once

#include <string>
#include <utility>

#include <json.hpp>

namespace arithtop {

/// Outcome of checking one inequality lhs REL rhs. When hypotheses_met is
/// false the bare inequality is still evaluated and recorded.
struct TheoremVerdict {
  std::string theorem;
  long long lhs = 0;
  long long rhs = 0;
  std::string relation = "<=";
  bool hypotheses_met = true;
  bool bare_holds = false;
  std::string note;

  bool pass() const { return hypotheses_met && bare_holds; }

  std::string status() const {
    if (!hypotheses_met) return "hypothesis-violated";
    return bare_holds ? "pass" : "fail";
  }

  std::string to_string() const {
    return theorem + ": " + std::to_string(lhs) + " " + relation + " " + std::to_string(rhs) + " [" + status() +
           (hypotheses_met ? "" : bare_holds ? ", bare inequality holds" : ", bare inequality fails") + "]" +
           (note.empty() ? "" : " " + note);
  }

  friend bool operator==(const TheoremVerdict&, const TheoremVerdict&) = default;
};

inline bool compare(long long lhs, const std::string& relation, long long rhs) {
  if (relation == "<=") return lhs <= rhs;
  if (relation == ">=") return lhs >= rhs;
  if (relation == "==") return lhs == rhs;
  if (relation == "!=") return lhs != rhs;
  if (relation == "<") return lhs < rhs;
  return lhs > rhs;
}

inline TheoremVerdict make_verdict(std::string theorem, long long lhs, std::string relation, long long rhs,
                                   bool hypotheses_met = true) {
  TheoremVerdict v{std::move(theorem), lhs, rhs, std::move(relation), hypotheses_met, false, {}};
  v.bare_holds = compare(v.lhs, v.relation, v.rhs);
  return v;
}

inline void to_json(nlohmann::json& j, const TheoremVerdict& v) {
  j = nlohmann::json{{"lhs", v.lhs},
                     {"rhs", v.rhs},
                     {"relation", v.relation},
                     {"pass", v.pass()},
                     {"hypotheses_met", v.hypotheses_met},
                     {"bare_holds", v.bare_holds},
                     {"status", v.status()}};
  if (!v.theorem.empty()) j["theorem"] = v.theorem;
  if (!v.note.empty()) j["note"] = v.note;
}

inline void from_json(const nlohmann::json& j, TheoremVerdict& v) {
  v.lhs = j.at("lhs").get<long long>();
  v.rhs = j.at("rhs").get<long long>();
  v.relation = j.value("relation", std::string("<="));
  v.hypotheses_met = j.value("hypotheses_met", true);
  v.bare_holds = j.contains("bare_holds") ? j.at("bare_holds").get<bool>() : j.at("pass").get<bool>();
  v.theorem = j.value("theorem", std::string());
  v.note = j.value("note", std::string());
}

}  // namespace arithtop
