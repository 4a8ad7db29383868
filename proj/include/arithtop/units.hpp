#pragma once

// Fundamental unit of a real quadratic field by the continued-fraction
// expansion of the ring generator omega.

#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "arithtop/arith.hpp"
#include "arithtop/error.hpp"

namespace arithtop {

/// x + y*omega with omega = sqrt(d), or (1 + sqrt(d))/2 when d = 1 mod 4.
struct FundamentalUnit {
  long long d = 0;
  mpz_class x;
  mpz_class y;
  int norm = 0;

  bool half_basis() const { return mod(d, 4) == 1; }

  /// Exact field norm of x + y*omega.
  mpz_class exact_norm() const {
    if (half_basis()) return x * x + x * y + y * y * static_cast<long>((1 - d) / 4);
    return x * x - y * y * static_cast<long>(d);
  }

  std::string to_string() const {
    const std::string w = half_basis() ? "(1+sqrt(" + std::to_string(d) + "))/2" : "sqrt(" + std::to_string(d) + ")";
    return x.get_str() + " + " + y.get_str() + "*" + w;
  }
};

inline FundamentalUnit fundamental_unit(long long d) {
  if (d < 0) throw Error(ErrorKind::NotReal, "d = " + std::to_string(d) + " is negative");
  if (d < 2 || !is_squarefree(d)) throw Error(ErrorKind::NotSquareFree, "d = " + std::to_string(d));
  const bool half = mod(d, 4) == 1;
  const long long s = isqrt(d);

  // Complete quotients (P + sqrt(d)) / Q, starting from omega.
  long long big_p = half ? 1 : 0, big_q = half ? 2 : 1;
  mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;  // convergents h/k of omega
  for (long step = 0;; ++step) {
    if (step > 1000000) throw std::logic_error("continued fraction did not reach a unit");
    const long long a = big_q > 0 ? fdiv(big_p + s, big_q) : fdiv(big_p + s + 1, big_q);
    const long a_l = static_cast<long>(a);
    const mpz_class h_next = a_l * h_prev + h;
    const mpz_class k_next = a_l * k_prev + k;
    // Shift so that (h_prev, k_prev) is the newest convergent.
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;

    FundamentalUnit u{d, half ? mpz_class(h_prev - k_prev) : h_prev, k_prev, 0};
    const mpz_class n = u.exact_norm();
    if (n == 1 || n == -1) {
      u.norm = n == 1 ? 1 : -1;
      return u;
    }
    big_p = a * big_q - big_p;
    big_q = (d - big_p * big_p) / big_q;
  }
}

}  // namespace arithtop
