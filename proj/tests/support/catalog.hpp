#pragma once

// Catalog of finite C_p-modules assembled from permutation, trivial and
// twisted blocks over Z/q, each presented twice: in diagonal coordinates for
// the enumeration oracle, and after a random unimodular basis change for the
// library.

#include <random>
#include <vector>

#include "arithtop/cpmod.hpp"
#include "support/oracles.hpp"

namespace catalog {

using arithtop::CpModule;
using arithtop::IntMatrix;
using oracle::FiniteModuleSpec;

struct Entry {
  FiniteModuleSpec spec;
  CpModule module;
};

inline FiniteModuleSpec trivial_block(int p, long q) { return {p, {q}, {{1}}}; }

inline FiniteModuleSpec permutation_block(int p, long q) {
  FiniteModuleSpec s{p, std::vector<long>(static_cast<std::size_t>(p), q), {}};
  s.tau.assign(static_cast<std::size_t>(p), std::vector<long>(static_cast<std::size_t>(p), 0));
  for (int i = 0; i < p; ++i) s.tau[static_cast<std::size_t>((i + 1) % p)][static_cast<std::size_t>(i)] = 1;
  return s;
}

/// Z/q with tau = multiplication by r, where r^p == 1 mod q.
inline FiniteModuleSpec scalar_block(int p, long q, long r) { return {p, {q}, {{r}}}; }

/// (Z/p)^2 with the unipotent action (x, y) -> (x, x + y).
inline FiniteModuleSpec jordan_block(int p) { return {p, {p, p}, {{1, 0}, {1, 1}}}; }

/// Z/(p k) + Z/p with (x, y) -> (x, x + y): a nonsplit extension.
inline FiniteModuleSpec extension_block(int p, long k) { return {p, {p * k, p}, {{1, 0}, {1, 1}}}; }

/// Z/p^2 with tau = 1 + p.
inline FiniteModuleSpec unipotent_scalar_block(int p) { return {p, {p * p}, {{1 + p}}}; }

inline FiniteModuleSpec sum(const FiniteModuleSpec& a, const FiniteModuleSpec& b) {
  FiniteModuleSpec s{a.p, a.orders, {}};
  s.orders.insert(s.orders.end(), b.orders.begin(), b.orders.end());
  const std::size_t n = s.orders.size(), na = a.orders.size();
  s.tau.assign(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) s.tau[i][j] = a.tau[i][j];
  for (std::size_t i = 0; i < b.orders.size(); ++i)
    for (std::size_t j = 0; j < b.orders.size(); ++j) s.tau[na + i][na + j] = b.tau[i][j];
  return s;
}

inline CpModule realize(const FiniteModuleSpec& spec, const oracle::Unimodular& basis) {
  const std::size_t n = spec.orders.size();
  IntMatrix rel(n, n), tau(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    rel(i, i) = spec.orders[i];
    for (std::size_t j = 0; j < n; ++j) tau(i, j) = spec.tau[i][j];
  }
  return CpModule::create(spec.p, basis.w * rel, basis.w * tau * basis.w_inv);
}

/// Building blocks available for prime p, kept small enough that sums stay
/// enumerable.
inline std::vector<FiniteModuleSpec> blocks(int p) {
  std::vector<FiniteModuleSpec> out;
  for (long q : {2L, 3L, 4L, 5L, 7L, 9L}) out.push_back(trivial_block(p, q));
  for (long q : {2L, 3L, 4L, 5L})
    if (permutation_block(p, q).order() <= 200) out.push_back(permutation_block(p, q));
  out.push_back(jordan_block(p));
  out.push_back(extension_block(p, 1));
  out.push_back(extension_block(p, 2));
  out.push_back(unipotent_scalar_block(p));
  switch (p) {
    case 2:
      for (long q : {3L, 4L, 5L, 8L, 12L}) out.push_back(scalar_block(p, q, q - 1));
      break;
    case 3:
      out.push_back(scalar_block(p, 7, 2));
      out.push_back(scalar_block(p, 9, 4));
      out.push_back(scalar_block(p, 13, 3));
      break;
    case 5:
      out.push_back(scalar_block(p, 11, 3));
      break;
    case 7:
      out.push_back(scalar_block(p, 29, 7));
      break;
    default:
      break;
  }
  return out;
}

/// Deterministic catalog: every single block, then random sums of two or
/// three blocks with order at most max_order, each under a random basis change.
inline std::vector<Entry> finite_catalog(std::size_t count, long max_order, unsigned seed = 20240601u) {
  std::mt19937 rng(seed);
  std::vector<Entry> out;
  const int primes[] = {2, 3, 5, 7};
  for (int p : primes)
    for (const auto& b : blocks(p)) {
      if (b.order() > max_order) continue;
      out.push_back({b, realize(b, oracle::random_unimodular(b.orders.size(), rng))});
    }
  std::uniform_int_distribution<int> prime_pick(0, 3), parts(2, 3);
  while (out.size() < count) {
    const int p = primes[prime_pick(rng)];
    const auto bl = blocks(p);
    std::uniform_int_distribution<std::size_t> pick(0, bl.size() - 1);
    FiniteModuleSpec s = bl[pick(rng)];
    const int k = parts(rng);
    for (int i = 1; i < k; ++i) s = sum(s, bl[pick(rng)]);
    if (s.order() > max_order) continue;
    out.push_back({s, realize(s, oracle::random_unimodular(s.orders.size(), rng))});
  }
  return out;
}

/// Torsion-free module built from f copies of Z[C_p], t trivial Z and a
/// augmentation ideals, returned together with the construction counts.
struct LatticeEntry {
  CpModule module;
  arithtop::TypeMultiplicities counts;
};

inline LatticeEntry random_lattice(int p, std::mt19937& rng, std::size_t max_each = 2) {
  std::uniform_int_distribution<std::size_t> count(0, max_each);
  arithtop::TypeMultiplicities m{count(rng), count(rng), count(rng)};
  if (m.f + m.t + m.a == 0) m.t = 1;
  CpModule acc = arithtop::zero_module(p);
  for (std::size_t i = 0; i < m.f; ++i) acc = arithtop::direct_sum(acc, arithtop::regular_module(p));
  for (std::size_t i = 0; i < m.t; ++i) acc = arithtop::direct_sum(acc, arithtop::trivial_module(p));
  for (std::size_t i = 0; i < m.a; ++i) acc = arithtop::direct_sum(acc, arithtop::augmentation_module(p));
  const auto w = oracle::random_unimodular(acc.generators(), rng);
  return {arithtop::change_basis(acc, w.w, w.w_inv), m};
}

}  // namespace catalog
