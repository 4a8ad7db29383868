#pragma once

// Quadratic fields Q(sqrt d): ramification, prime splitting, the class group
// as a C_2-module under inversion, the unit lattice, and the inequalities
// relating ramification to their Tate cohomology.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arithtop/arith.hpp"
#include "arithtop/cpmod.hpp"
#include "arithtop/error.hpp"
#include "arithtop/forms.hpp"
#include "arithtop/units.hpp"
#include "arithtop/verdict.hpp"

namespace arithtop {

struct QuadraticField {
  long long d = 0;
  long long discriminant = 0;
  bool real = false;
};

inline QuadraticField quadratic_field(long long d) {
  if (d == 0 || d == 1) throw Error(ErrorKind::InvalidArgument, "d must not be 0 or 1");
  if (!is_squarefree(d)) throw Error(ErrorKind::NotSquareFree, "d = " + std::to_string(d));
  return {d, mod(d, 4) == 1 ? d : 4 * d, d > 0};
}

struct RamificationData {
  std::vector<long long> finite_ramified;
  int s0 = 0;
  int s_inf = 0;
  int s = 0;
};

inline RamificationData ramification(long long d) {
  const QuadraticField k = quadratic_field(d);
  RamificationData r;
  r.finite_ramified = prime_factors(k.discriminant);
  r.s0 = static_cast<int>(r.finite_ramified.size());
  r.s_inf = k.real ? 0 : 1;
  r.s = r.s0 + r.s_inf;
  return r;
}

enum class Splitting { Split, Inert, Ramified };

inline const char* to_string(Splitting s) {
  switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
  }
  return "?";
}

inline Splitting classify_prime(long long d, long long q) {
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not prime");
  const int k = kronecker(quadratic_field(d).discriminant, q);
  if (k == 0) return Splitting::Ramified;
  return k == 1 ? Splitting::Split : Splitting::Inert;
}

struct SplittingDensity {
  std::size_t split = 0;
  std::size_t total = 0;
  double fraction = 0.0;
};

inline SplittingDensity splitting_density(long long d, long long prime_bound) {
  SplittingDensity out;
  for (long long q : primes_up_to(prime_bound)) {
    ++out.total;
    if (classify_prime(d, q) == Splitting::Split) ++out.split;
  }
  if (out.total > 0) out.fraction = static_cast<double>(out.split) / static_cast<double>(out.total);
  return out;
}

// ---------------------------------------------------------------------------
// Class groups.

struct ClassGroupData {
  std::vector<long long> invariants;         ///< wide (ideal) class group
  std::vector<long long> narrow_invariants;  ///< form classes under proper equivalence
  std::size_t class_number = 1;
  std::size_t narrow_class_number = 1;
};

inline ClassGroupData class_group_data(long long d) {
  const QuadraticField k = quadratic_field(d);
  const FormClassGroup forms(k.discriminant);
  ClassGroupData out;
  out.narrow_invariants = forms.table().invariant_factors();
  out.narrow_class_number = forms.class_number();
  if (k.real) {
    const FiniteAbelianTable wide = forms.table().quotient({forms.sign_class()});
    out.invariants = wide.invariant_factors();
    out.class_number = wide.size();
  } else {
    out.invariants = out.narrow_invariants;
    out.class_number = out.narrow_class_number;
  }
  return out;
}

/// Finite abelian group with the given invariant factors and tau = inversion.
inline CpModule inversion_module(const std::vector<long long>& invariants) {
  IntVector diag;
  for (long long f : invariants) diag.emplace_back(static_cast<long>(f));
  const std::size_t n = diag.size();
  IntMatrix minus(n, n);
  for (std::size_t i = 0; i < n; ++i) minus(i, i) = -1;
  return CpModule::create(2, IntMatrix::diagonal(diag), std::move(minus));
}

inline CpModule class_group(long long d) { return inversion_module(class_group_data(d).invariants); }

/// Units modulo torsion: Z with tau = -1 for real fields, 0 otherwise.
inline CpModule unit_module(long long d) {
  if (quadratic_field(d).real) return CpModule::create(2, IntMatrix(1, 0), IntMatrix{{-1}});
  return zero_module(2);
}

// ---------------------------------------------------------------------------
// Everything about one field, computed once.

struct FieldAnalysis {
  QuadraticField field;
  RamificationData ram;
  ClassGroupData cl;
  std::size_t dim_h0_cl = 0;
  std::size_t dim_h1_cl = 0;
  std::optional<FundamentalUnit> unit;
  std::size_t unit_h1_dim = 0;
};

inline FieldAnalysis analyze_field(long long d) {
  FieldAnalysis a{quadratic_field(d), ramification(d), class_group_data(d), 0, 0, std::nullopt, 0};
  const TateCohomology t = tate(inversion_module(a.cl.invariants));
  a.dim_h0_cl = t.dim_h0;
  a.dim_h1_cl = t.dim_h1;
  if (a.field.real) a.unit = fundamental_unit(d);
  a.unit_h1_dim = tate(unit_module(d)).dim_h1;
  return a;
}

/// s0 <= 1 + dim H^0(C_2, Cl) + dim H^1(C_2, units mod torsion).
inline TheoremVerdict check_upper_nf(const FieldAnalysis& a) {
  return make_verdict("upper_nf", a.ram.s0, "<=",
                      1 + static_cast<long long>(a.dim_h0_cl) + static_cast<long long>(a.unit_h1_dim));
}

/// s >= 1 + dim H^0(C_2, Cl). The side condition (Cl(Q) has no 2-torsion) is
/// vacuous over Q and recorded as met.
inline TheoremVerdict check_lower_nf(const FieldAnalysis& a) {
  return make_verdict("lower_nf", a.ram.s, ">=", 1 + static_cast<long long>(a.dim_h0_cl), true);
}

struct GaussIdentity {
  long long value = 0;  ///< s - dim Cl^{C_2}
  int unit_norm = 0;
  bool in_range = false;    ///< value is 1 or 2
  bool correlated = false;  ///< value == 1 exactly when the norm is -1
};

inline GaussIdentity gauss_identity(const FieldAnalysis& a) {
  if (!a.field.real) throw Error(ErrorKind::NotReal, "d = " + std::to_string(a.field.d));
  GaussIdentity g;
  g.value = a.ram.s - static_cast<long long>(a.dim_h0_cl);
  g.unit_norm = a.unit->norm;
  g.in_range = g.value == 1 || g.value == 2;
  g.correlated = (g.value == 1) == (g.unit_norm == -1);
  return g;
}

/// lhs = s - dim Cl^{C_2}, rhs = 1 if the fundamental unit has norm -1 else 2.
inline TheoremVerdict gauss_identity_verdict(const FieldAnalysis& a) {
  const GaussIdentity g = gauss_identity(a);
  TheoremVerdict v = make_verdict("gauss_identity", g.value, "==", g.unit_norm == -1 ? 1 : 2);
  v.bare_holds = g.in_range && g.correlated;
  return v;
}

/// Cl^{C_2} is an elementary abelian 2-group of rank <= s - 1.
inline TheoremVerdict check_cor_lower_nf(const FieldAnalysis& a) {
  const FgAbGroup fixed = fixed_points(inversion_module(a.cl.invariants));
  bool elementary = fixed.is_finite();
  for (const auto& f : fixed.invariant_factors()) elementary = elementary && f == 2;
  TheoremVerdict v =
      make_verdict("cor_lower", static_cast<long long>(fixed.invariant_factors().size()), "<=", a.ram.s - 1);
  v.bare_holds = v.bare_holds && elementary;
  return v;
}

inline TheoremVerdict check_upper_nf(long long d) { return check_upper_nf(analyze_field(d)); }
inline TheoremVerdict check_lower_nf(long long d) { return check_lower_nf(analyze_field(d)); }
inline GaussIdentity gauss_identity(long long d) {
  if (d < 0) throw Error(ErrorKind::NotReal, "d = " + std::to_string(d));
  return gauss_identity(analyze_field(d));
}
inline TheoremVerdict check_cor_lower_nf(long long d) { return check_cor_lower_nf(analyze_field(d)); }

// ---------------------------------------------------------------------------

using ClassNumberFn = std::function<std::size_t(long long d)>;

inline std::size_t class_number(long long d) { return class_group_data(d).class_number; }

/// Square-free d in [bound, -1] with trivial class group, in order of
/// increasing |d|.
inline std::vector<long long> nine_fields_check(long long bound, const ClassNumberFn& h = class_number) {
  std::vector<long long> out;
  for (long long d = -1; d >= bound; --d)
    if (is_squarefree(d) && h(d) == 1) out.push_back(d);
  return out;
}

}  // namespace arithtop
