#pragma once

// Finite abelian groups given by a full multiplication table, with invariant
// factors read off from the sizes of the q^k-torsion subgroups.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "arithtop/arith.hpp"

namespace arithtop {

class FiniteAbelianTable {
 public:
  FiniteAbelianTable(std::vector<std::vector<std::size_t>> table, std::size_t identity)
      : table_(std::move(table)), identity_(identity) {
    for (const auto& row : table_)
      if (row.size() != table_.size()) throw std::invalid_argument("multiplication table is not square");
    if (!table_.empty() && identity_ >= table_.size()) throw std::invalid_argument("identity out of range");
  }

  std::size_t size() const noexcept { return table_.size(); }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t mul(std::size_t x, std::size_t y) const { return table_[x][y]; }

  std::size_t power(std::size_t x, unsigned long long k) const {
    std::size_t acc = identity_;
    while (k > 0) {
      if (k & 1) acc = mul(acc, x);
      x = mul(x, x);
      k >>= 1;
    }
    return acc;
  }

  std::size_t order(std::size_t x) const {
    std::size_t n = 1;
    for (std::size_t y = x; y != identity_; y = mul(y, x)) ++n;
    return n;
  }

  /// Subgroup generated by gens, as a sorted element list.
  std::vector<std::size_t> span(const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(size(), false);
    std::vector<std::size_t> elems{identity_};
    in[identity_] = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t g : gens) {
        const std::size_t y = mul(elems[i], g);
        if (!in[y]) {
          in[y] = true;
          elems.push_back(y);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  /// G / <gens>, with cosets numbered by their smallest element.
  FiniteAbelianTable quotient(const std::vector<std::size_t>& gens) const {
    const auto sub = span(gens);
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> coset(size(), unset), reps;
    for (std::size_t x = 0; x < size(); ++x) {
      if (coset[x] != unset) continue;
      for (std::size_t h : sub) coset[mul(x, h)] = reps.size();
      reps.push_back(x);
    }
    std::vector<std::vector<std::size_t>> table(reps.size(), std::vector<std::size_t>(reps.size()));
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = 0; j < reps.size(); ++j) table[i][j] = coset[mul(reps[i], reps[j])];
    return FiniteAbelianTable(std::move(table), coset[identity_]);
  }

  /// Invariant factors d_1 | d_2 | ..., all > 1; empty for the trivial group.
  std::vector<long long> invariant_factors() const {
    const auto n = static_cast<long long>(size());
    std::vector<std::vector<long long>> prime_powers;  // per prime, descending
    for (long long q : prime_factors(n)) {
      long long full = 1;
      for (long long m = n; m % q == 0; m /= q) full *= q;
      // ranks[k] = number of cyclic q-factors of order >= q^k.
      std::vector<std::size_t> ranks{0};
      long long prev = 1, qk = 1;
      while (prev < full) {
        qk *= q;
        long long count = 0;
        for (std::size_t x = 0; x < size(); ++x)
          if (power(x, static_cast<unsigned long long>(qk)) == identity_) ++count;
        std::size_t r = 0;
        for (long long ratio = count / prev; ratio > 1; ratio /= q) ++r;
        ranks.push_back(r);
        prev = count;
      }
      std::vector<long long> powers;
      long long pk = 1;
      for (std::size_t k = 1; k < ranks.size(); ++k) {
        pk *= q;
        const std::size_t next = k + 1 < ranks.size() ? ranks[k + 1] : 0;
        for (std::size_t i = next; i < ranks[k]; ++i) powers.push_back(pk);
      }
      std::sort(powers.rbegin(), powers.rend());
      prime_powers.push_back(std::move(powers));
    }
    std::size_t count = 0;
    for (const auto& pp : prime_powers) count = std::max(count, pp.size());
    std::vector<long long> out(count, 1);
    for (const auto& pp : prime_powers)
      for (std::size_t i = 0; i < pp.size(); ++i) out[i] *= pp[i];
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_;
};

}  // namespace arithtop
