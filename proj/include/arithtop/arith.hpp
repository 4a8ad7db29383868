#pragma once

// Small-integer arithmetic used by the quadratic-field code.

#include <cstdint>
#include <cstdlib>
#include <utility>
#include <vector>

namespace arithtop {

/// floor(sqrt(n)) for n >= 0.
inline long long isqrt(long long n) {
  if (n < 0) return -1;
  long long r = 0;
  for (long long bit = 1LL << 31; bit > 0; bit >>= 1) {
    const long long t = r + bit;
    if (static_cast<__int128>(t) * t <= n) r = t;
  }
  return r;
}

/// Floor division, b != 0.
inline long long fdiv(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Least non-negative residue.
inline long long mod(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + (m < 0 ? -m : m) : r;
}

/// Distinct prime divisors of |n| in increasing order, by trial division.
inline std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  n = std::llabs(n);
  for (long long q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_squarefree(long long n) {
  if (n == 0) return false;
  n = std::llabs(n);
  for (long long q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return false;
  }
  return true;
}

inline std::vector<long long> primes_up_to(long long bound) {
  std::vector<long long> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (long long i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long long j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

/// Kronecker symbol (a/n) for any integers a, n.
inline int kronecker(long long a, long long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    const long long a8 = mod(a, 8);
    if ((twos % 2 == 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a/n), n odd positive.
  a = mod(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long long n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace arithtop
