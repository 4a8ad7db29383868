#pragma once

// Per-field reports and their JSON form.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arithtop/quadratic.hpp"
#include "arithtop/verdict.hpp"

namespace arithtop {

struct QuadraticFieldReport {
  long long d = 0;
  long long discriminant = 0;
  int s0 = 0;
  int s_inf = 0;
  int s = 0;
  std::vector<long long> class_invariants;
  std::vector<long long> narrow_class_invariants;
  std::size_t dim_h0_cl = 0;
  std::size_t dim_h1_cl = 0;
  std::optional<int> unit_norm;
  std::size_t unit_h1_dim = 0;
  std::map<std::string, TheoremVerdict> checks;

  std::size_t class_number() const {
    std::size_t h = 1;
    for (long long f : class_invariants) h *= static_cast<std::size_t>(f);
    return h;
  }

  bool all_pass() const {
    for (const auto& [name, v] : checks)
      if (!v.pass()) return false;
    return true;
  }

  friend bool operator==(const QuadraticFieldReport&, const QuadraticFieldReport&) = default;
};

inline QuadraticFieldReport make_report(const FieldAnalysis& a) {
  QuadraticFieldReport r;
  r.d = a.field.d;
  r.discriminant = a.field.discriminant;
  r.s0 = a.ram.s0;
  r.s_inf = a.ram.s_inf;
  r.s = a.ram.s;
  r.class_invariants = a.cl.invariants;
  r.narrow_class_invariants = a.cl.narrow_invariants;
  r.dim_h0_cl = a.dim_h0_cl;
  r.dim_h1_cl = a.dim_h1_cl;
  if (a.unit) r.unit_norm = a.unit->norm;
  r.unit_h1_dim = a.unit_h1_dim;
  r.checks["upper_nf"] = check_upper_nf(a);
  r.checks["lower_nf"] = check_lower_nf(a);
  r.checks["cor_lower"] = check_cor_lower_nf(a);
  if (a.field.real) r.checks["gauss_identity"] = gauss_identity_verdict(a);
  return r;
}

inline QuadraticFieldReport make_report(long long d) { return make_report(analyze_field(d)); }

// ---------------------------------------------------------------------------
// JSON.

inline void to_json(nlohmann::json& j, const QuadraticFieldReport& r) {
  j = nlohmann::json{{"d", r.d},
                     {"discriminant", r.discriminant},
                     {"s0", r.s0},
                     {"s_inf", r.s_inf},
                     {"s", r.s},
                     {"class_invariants", r.class_invariants},
                     {"narrow_class_invariants", r.narrow_class_invariants},
                     {"dim_h0_cl", r.dim_h0_cl},
                     {"dim_h1_cl", r.dim_h1_cl},
                     {"unit_norm", r.unit_norm ? nlohmann::json(*r.unit_norm) : nlohmann::json(nullptr)},
                     {"unit_h1_dim", r.unit_h1_dim},
                     {"checks", r.checks}};
}

inline void from_json(const nlohmann::json& j, QuadraticFieldReport& r) {
  r.d = j.at("d").get<long long>();
  r.discriminant = j.at("discriminant").get<long long>();
  r.s0 = j.at("s0").get<int>();
  r.s_inf = j.at("s_inf").get<int>();
  r.s = j.at("s").get<int>();
  r.class_invariants = j.at("class_invariants").get<std::vector<long long>>();
  r.narrow_class_invariants = j.value("narrow_class_invariants", std::vector<long long>{});
  r.dim_h0_cl = j.at("dim_h0_cl").get<std::size_t>();
  r.dim_h1_cl = j.at("dim_h1_cl").get<std::size_t>();
  if (j.at("unit_norm").is_null())
    r.unit_norm.reset();
  else
    r.unit_norm = j.at("unit_norm").get<int>();
  r.unit_h1_dim = j.at("unit_h1_dim").get<std::size_t>();
  r.checks = j.at("checks").get<std::map<std::string, TheoremVerdict>>();
}

}  // namespace arithtop
