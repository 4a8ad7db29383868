#pragma once

// C_p-actions on closed 3-manifolds, recorded through H_1 as a C_p-module
// plus declared branching data, and the inequalities relating the number of
// branch circles to Tate cohomology.

#include <string>
#include <vector>

#include "arithtop/cpmod.hpp"
#include "arithtop/error.hpp"
#include "arithtop/verdict.hpp"

namespace arithtop {

/// Torsion subgroup with the restricted action.
inline CpModule tor_module(const CpModule& m) { return detail::smith_split(m).torsion; }

/// Quotient by torsion with the induced action.
inline CpModule free_module(const CpModule& m) { return detail::smith_split(m).free; }

/// Z + Z/p on generators (x, y) with tau(x, y) = (x, x + y).
inline CpModule nonsplit_block(int p) {
  return CpModule::create(p, IntMatrix{{0}, {p}}, IntMatrix{{1, 0}, {1, 1}});
}

struct ManifoldExample {
  std::string name;
  int p = 2;
  int n = 0;  ///< family parameter, 0 when unused
  CpModule h1;
  int s = 0;  ///< number of branch circles
  std::size_t quotient_free_rank = 0;
  bool quotient_tor_p_trivial = true;
  bool splits = true;  ///< H_1 = H_tor + H_free as modules
};

/// Lens-space connected sum: H_1 = Z/p (trivial) + augmentation ideal,
/// three branch circles, quotient S^3.
inline ManifoldExample example_lens(int p) {
  return {"lens", p, 0, direct_sum(trivial_module(p, p), augmentation_module(p)), 3, 0, true, true};
}

/// Surgered torus bundle M_{p,n}: H_1 = Z^{n-1} (trivial) + nonsplit
/// Z + Z/p, n branch circles, quotient M_{1,n} with H_1 = Z^n.
inline ManifoldExample example_hempel(int p, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "hempel needs n >= 1, got " + std::to_string(n));
  CpModule h1 = nonsplit_block(p);
  for (int i = 1; i < n; ++i) h1 = direct_sum(trivial_module(p), h1);
  return {"hempel", p, n, std::move(h1), n, static_cast<std::size_t>(n), true, false};
}

inline std::vector<std::string> example_names() { return {"lens", "hempel"}; }

inline ManifoldExample make_example(const std::string& name, int p, int n = 1) {
  if (name == "lens") return example_lens(p);
  if (name == "hempel") return example_hempel(p, n);
  throw Error(ErrorKind::InvalidArgument, "unknown example '" + name + "'");
}

namespace detail {

inline long long h0_dim(const CpModule& m) { return static_cast<long long>(tate(m).dim_h0); }
inline long long h1_dim(const CpModule& m) { return static_cast<long long>(tate(m).dim_h1); }

/// Number of p-primary cyclic factors, and whether each has order exactly p.
inline std::pair<long long, bool> p_primary_shape(const FgAbGroup& g, int p) {
  long long rank = 0;
  bool elementary = true;
  for (const auto& f : g.invariant_factors()) {
    if (f % p != 0) continue;
    ++rank;
    if (f % (p * p) == 0) elementary = false;
  }
  return {rank, elementary};
}

}  // namespace detail

/// s <= 1 + dim H^0(C_p, H_1) + dim H^1(C_p, H_free). No side hypotheses.
inline TheoremVerdict check_upperT(const ManifoldExample& e) {
  return make_verdict("upperT", e.s, "<=", 1 + detail::h0_dim(e.h1) + detail::h1_dim(free_module(e.h1)));
}

/// s <= 1 + dim H^0(C_p, H_tor) + dim H^1(C_p, H_free), assuming H_free(M/C_p) = 0.
inline TheoremVerdict check_upper1(const ManifoldExample& e) {
  return make_verdict("upper1", e.s, "<=",
                      1 + detail::h0_dim(tor_module(e.h1)) + detail::h1_dim(free_module(e.h1)),
                      e.quotient_free_rank == 0);
}

/// s >= 1 + dim H^0(C_p, H_tor), assuming s > 0 and a split H_1.
inline TheoremVerdict check_lower1(const ManifoldExample& e) {
  return make_verdict("lower1", e.s, ">=", 1 + detail::h0_dim(tor_module(e.h1)), e.s > 0 && e.splits);
}

/// H_tor^{C_p} = (Z/p)^{s-1} for rational homology spheres with no p-torsion
/// in the quotient. lhs is the p-rank of the fixed points.
inline TheoremVerdict check_reznikov(const ManifoldExample& e) {
  const FgAbGroup fixed = fixed_points(tor_module(e.h1));
  const bool hyp = free_module(e.h1).generators() == 0 && e.quotient_tor_p_trivial && e.s != 0;
  const auto [rank, elementary] = detail::p_primary_shape(fixed, e.p);
  bool only_p = true;
  for (const auto& f : fixed.invariant_factors()) only_p = only_p && f == e.p;
  TheoremVerdict v = make_verdict("reznikov", rank, "==", e.s - 1, hyp);
  v.bare_holds = v.bare_holds && only_p && elementary;
  v.note = "fixed points " + fixed.to_string();
  return v;
}

/// The p-primary part of H_tor^{C_p} is elementary abelian; its rank is at
/// most s - 1 when H_1 splits and s > 0.
inline TheoremVerdict check_cor_lower_mfld(const ManifoldExample& e) {
  const FgAbGroup fixed = fixed_points(tor_module(e.h1));
  const auto [rank, elementary] = detail::p_primary_shape(fixed, e.p);
  const bool rank_branch = e.splits && e.s > 0;
  TheoremVerdict v = make_verdict("cor_lower_mfld", rank, "<=", rank_branch ? e.s - 1 : rank, e.quotient_tor_p_trivial);
  v.bare_holds = v.bare_holds && elementary;
  if (!rank_branch) v.note = "rank bound skipped (H_1 does not split)";
  return v;
}

inline std::vector<TheoremVerdict> run_checks(const ManifoldExample& e) {
  return {check_upperT(e), check_upper1(e), check_lower1(e), check_reznikov(e), check_cor_lower_mfld(e)};
}

// ---------------------------------------------------------------------------
// Expected classification of each verdict, from the declared cohomology of
// the two families (not from the module computation).

struct ExpectedOutcome {
  std::string theorem;
  bool hypotheses_met = true;
  bool bare_holds = true;
};

inline std::vector<ExpectedOutcome> expected_outcomes(const ManifoldExample& e) {
  if (e.name == "lens") {
    // dim H^0(H_tor) = 1, dim H^1(H_free) = 1, dim H^0(H_1) = 1, s = 3.
    return {{"upperT", true, 3 <= 1 + 1 + 1},
            {"upper1", true, 3 <= 1 + 1 + 1},
            {"lower1", true, 3 >= 1 + 1},
            {"reznikov", false, 1 == 3 - 1},
            {"cor_lower_mfld", true, 1 <= 3 - 1}};
  }
  if (e.name == "hempel") {
    // dim H^0(H_tor) = 1, dim H^1(H_free) = 0, dim H^0(H_1) = n, s = n.
    const int n = e.n;
    return {{"upperT", true, n <= 1 + n + 0},
            {"upper1", false, n <= 1 + 1 + 0},
            {"lower1", false, n >= 1 + 1},
            {"reznikov", false, 1 == n - 1},
            {"cor_lower_mfld", true, true}};
  }
  throw Error(ErrorKind::InvalidArgument, "no expected outcomes for '" + e.name + "'");
}

inline bool matches(const TheoremVerdict& v, const ExpectedOutcome& x) {
  return v.theorem == x.theorem && v.hypotheses_met == x.hypotheses_met && v.bare_holds == x.bare_holds;
}

}  // namespace arithtop
