#pragma once

// Test-only oracles. Nothing here calls into the Smith-normal-form path it is
// used to check: cohomology is counted by enumerating group elements, minors
// by cofactor expansion, class numbers by direct form enumeration.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arithtop/intlinalg.hpp"

namespace oracle {

using arithtop::IntMatrix;
using arithtop::Integer;

inline long to_long(const Integer& v) { return v.get_si(); }

// ---------------------------------------------------------------------------
// Brute-force Tate cohomology of a finite module
//   Z/n_1 x ... x Z/n_k  with tau given on the coordinates.

struct FiniteModuleSpec {
  int p = 2;
  std::vector<long> orders;             // n_i
  std::vector<std::vector<long>> tau;   // k x k, column j = image of e_j

  long order() const {
    long n = 1;
    for (long o : orders) n *= o;
    return n;
  }
};

struct BruteTate {
  long h0_order = 0;
  long h1_order = 0;
  int dim_h0 = -1;
  int dim_h1 = -1;
  bool elementary = true;
};

namespace detail {

inline std::vector<long> decode(long index, const std::vector<long>& orders) {
  std::vector<long> x(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    x[i] = index % orders[i];
    index /= orders[i];
  }
  return x;
}

inline long encode(const std::vector<long>& x, const std::vector<long>& orders) {
  long index = 0;
  for (std::size_t i = orders.size(); i-- > 0;) index = index * orders[i] + x[i];
  return index;
}

inline std::vector<long> apply(const std::vector<std::vector<long>>& m, const std::vector<long>& x,
                               const std::vector<long>& orders) {
  std::vector<long> y(orders.size(), 0);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    long acc = 0;
    for (std::size_t j = 0; j < orders.size(); ++j) acc += m[i][j] * x[j];
    y[i] = ((acc % orders[i]) + orders[i]) % orders[i];
  }
  return y;
}

inline int log_p(long n, int p) {
  int d = 0;
  while (n > 1) {
    if (n % p != 0) return -1;
    n /= p;
    ++d;
  }
  return d;
}

}  // namespace detail

inline BruteTate brute_force_tate(const FiniteModuleSpec& spec) {
  const long n = spec.order();
  const auto& ord = spec.orders;
  std::vector<long> tau_of(n), norm_of(n), aug_of(n);
  for (long i = 0; i < n; ++i) {
    auto x = detail::decode(i, ord);
    auto t = detail::apply(spec.tau, x, ord);
    tau_of[i] = detail::encode(t, ord);
    std::vector<long> s(ord.size());
    for (std::size_t k = 0; k < ord.size(); ++k) s[k] = ((t[k] - x[k]) % ord[k] + ord[k]) % ord[k];
    aug_of[i] = detail::encode(s, ord);
    std::vector<long> acc(ord.size(), 0), cur = x;
    for (int r = 0; r < spec.p; ++r) {
      for (std::size_t k = 0; k < ord.size(); ++k) acc[k] = (acc[k] + cur[k]) % ord[k];
      cur = detail::apply(spec.tau, cur, ord);
    }
    norm_of[i] = detail::encode(acc, ord);
  }
  std::set<long> ker_s, ker_n, im_s(aug_of.begin(), aug_of.end()), im_n(norm_of.begin(), norm_of.end());
  for (long i = 0; i < n; ++i) {
    if (aug_of[i] == 0) ker_s.insert(i);
    if (norm_of[i] == 0) ker_n.insert(i);
  }
  BruteTate out;
  if (ker_s.size() % im_n.size() || ker_n.size() % im_s.size()) throw std::logic_error("image not inside kernel");
  out.h0_order = static_cast<long>(ker_s.size() / im_n.size());
  out.h1_order = static_cast<long>(ker_n.size() / im_s.size());
  out.dim_h0 = detail::log_p(out.h0_order, spec.p);
  out.dim_h1 = detail::log_p(out.h1_order, spec.p);
  // p kills both subquotients: p * kernel element lands in the image.
  auto times_p_in = [&](const std::set<long>& ker, const std::set<long>& im) {
    for (long i : ker) {
      auto x = detail::decode(i, ord);
      for (std::size_t k = 0; k < ord.size(); ++k) x[k] = (x[k] * spec.p) % ord[k];
      if (!im.count(detail::encode(x, ord))) return false;
    }
    return true;
  };
  out.elementary = times_p_in(ker_s, im_n) && times_p_in(ker_n, im_s);
  return out;
}

/// All fixed elements of a finite module, counted by enumeration.
inline long brute_force_fixed_count(const FiniteModuleSpec& spec) {
  long count = 0;
  for (long i = 0; i < spec.order(); ++i) {
    auto x = detail::decode(i, spec.orders);
    if (detail::apply(spec.tau, x, spec.orders) == x) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Random unimodular matrices with their inverses.

struct Unimodular {
  IntMatrix w;
  IntMatrix w_inv;
};

inline Unimodular random_unimodular(std::size_t n, std::mt19937& rng, int ops = -1) {
  Unimodular out{IntMatrix::identity(n), IntMatrix::identity(n)};
  if (n == 0) return out;
  if (ops < 0) ops = static_cast<int>(3 * n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2), kind(0, 4);
  for (int k = 0; k < ops; ++k) {
    const std::size_t i = idx(rng), j = idx(rng);
    const int op = kind(rng);
    if (op == 0) {
      out.w.swap_rows(i, j);
      out.w_inv.swap_cols(i, j);
    } else if (op == 1) {
      out.w.negate_row(i);
      out.w_inv.negate_col(i);
    } else if (i != j) {
      const Integer q = coef(rng);
      out.w.add_row_multiple(i, j, q);
      out.w_inv.add_col_multiple(j, i, -q);
    }
  }
  return out;
}

inline IntMatrix random_matrix(std::size_t rows, std::size_t cols, long bound, std::mt19937& rng) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// ---------------------------------------------------------------------------
// Cofactor determinant and minors (small sizes only).

inline Integer cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    const Integer sub = cofactor_det(a.select(rows, cols));
    det += (j % 2 == 0 ? 1 : -1) * a(0, j) * sub;
  }
  return det;
}

inline void combinations(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// gcd of all k x k minors.
inline Integer minor_gcd(const IntMatrix& a, std::size_t k) {
  std::vector<std::vector<std::size_t>> rows, cols;
  std::vector<std::size_t> cur;
  combinations(a.rows(), k, 0, cur, rows);
  combinations(a.cols(), k, 0, cur, cols);
  Integer g = 0;
  for (const auto& r : rows)
    for (const auto& c : cols) {
      const Integer m = cofactor_det(a.select(r, c));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
    }
  return g;
}

// ---------------------------------------------------------------------------
// Reduced positive definite forms of discriminant D < 0, by direct (a,b,c)
// enumeration: |b| <= a <= c, b >= 0 whenever |b| == a or a == c, primitive.

inline long count_reduced_definite_forms(long disc) {
  long count = 0;
  const long bound = static_cast<long>(std::sqrt(-disc / 3.0)) + 1;
  for (long a = 1; a <= bound; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++count;
    }
  return count;
}

// ---------------------------------------------------------------------------
// Quadratic characters and analytic class numbers. The character is built
// from Euler's criterion on prime factors, not from a reciprocity algorithm.

inline long pow_mod(long b, long e, long m) {
  long r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = static_cast<long>(static_cast<__int128>(r) * b % m);
    b = static_cast<long>(static_cast<__int128>(b) * b % m);
  }
  return r;
}

/// chi_D(q) for a prime q.
inline int chi_prime(long disc, long q) {
  if (disc % q == 0) return 0;
  if (q == 2) {
    const long r = ((disc % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  return pow_mod(disc, (q - 1) / 2, q) == 1 ? 1 : -1;
}

/// chi_D(a) for a > 0, multiplicative over the factorization of a.
inline int chi(long disc, long a) {
  int r = 1;
  for (long q = 2; q * q <= a; ++q)
    while (a % q == 0) {
      r *= chi_prime(disc, q);
      a /= q;
    }
  if (a > 1) r *= chi_prime(disc, a);
  return r;
}

/// h(D) for a fundamental D < 0: -(w / 2|D|) * sum chi(a) a.
inline long analytic_class_number_imag(long disc) {
  const long n = -disc;
  long sum = 0;
  for (long a = 1; a < n; ++a) sum += chi(disc, a) * a;
  const long w = disc == -3 ? 6 : disc == -4 ? 4 : 2;
  return -w * sum / (2 * n);
}

/// h(D) * log(eps) for a fundamental D > 0: -1/2 sum chi(a) log sin(pi a / D).
inline double analytic_h_regulator_real(long disc) {
  double sum = 0.0;
  for (long a = 1; a < disc; ++a) sum += chi(disc, a) * std::log(std::sin(M_PI * static_cast<double>(a) / disc));
  return -0.5 * sum;
}

/// q splits in the field of discriminant D: D is a nonzero square mod 4q
/// (odd q) or D = 1 mod 8 (q = 2), by direct search.
inline bool splits_by_search(long disc, long q) {
  if (disc % q == 0) return false;
  if (q == 2) return ((disc % 8) + 8) % 8 == 1;
  const long r = ((disc % q) + q) % q;
  for (long x = 1; x < q; ++x)
    if (x * x % q == r) return true;
  return false;
}

/// Smallest Y >= 1 with X^2 - d Y^2 = +-c for some X >= 1, c = 1 or 4
/// (c = 4 allows the half-integral basis), searching Y < limit.
inline std::optional<std::pair<long, long>> smallest_unit(long d, long c, long limit) {
  for (long y = 1; y < limit; ++y) {
    const __int128 dy2 = static_cast<__int128>(d) * y * y;
    for (long sign : {-1L, 1L}) {
      const __int128 x2 = dy2 + sign * c;
      if (x2 <= 0) continue;
      long x = static_cast<long>(std::sqrt(static_cast<double>(x2)));
      while (static_cast<__int128>(x) * x > x2) --x;
      while (static_cast<__int128>(x + 1) * (x + 1) <= x2) ++x;
      if (static_cast<__int128>(x) * x == x2) return std::pair{x, y};
    }
  }
  return std::nullopt;
}

}  // namespace oracle
