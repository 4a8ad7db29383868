#pragma once

// Primitive binary quadratic forms ax^2 + bxy + cy^2 of a fixed discriminant D,
// reduction (definite: Gauss; indefinite: rho-cycles), Dirichlet composition,
// and the form class group as a finite abelian group.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "arithtop/arith.hpp"
#include "arithtop/error.hpp"
#include "arithtop/finite_abelian.hpp"

namespace arithtop {

struct QuadForm {
  long long a = 1;
  long long b = 0;
  long long c = 0;

  long long discriminant() const { return b * b - 4 * a * c; }
  bool primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }
  std::string to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }

  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

inline QuadForm principal_form(long long disc) {
  const long long b = mod(disc, 2);
  return {1, b, (b * b - disc) / 4};
}

/// (a, -b, c): the inverse class.
inline QuadForm opposite(const QuadForm& f) { return {f.a, -f.b, f.c}; }

// ---------------------------------------------------------------------------
// Positive definite forms.

inline bool is_reduced_definite(const QuadForm& f) {
  if (f.a <= 0 || f.c < f.a) return false;
  if (!(-f.a < f.b && f.b <= f.a)) return false;
  return !(f.a == f.c && f.b < 0);
}

inline QuadForm reduce_definite(QuadForm f) {
  const long long disc = f.discriminant();
  if (disc >= 0 || f.a <= 0) throw Error(ErrorKind::InvalidArgument, "not positive definite: " + f.to_string());
  for (;;) {
    if (!(-f.a < f.b && f.b <= f.a)) {
      const long long k = fdiv(f.a - f.b, 2 * f.a);
      f.b += 2 * f.a * k;
      f.c = (f.b * f.b - disc) / (4 * f.a);
    }
    if (f.c < f.a) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

// ---------------------------------------------------------------------------
// Indefinite forms, D > 0 not a square. Reduced means
//   0 < b < sqrt(D),  sqrt(D) - b < 2|a| < sqrt(D) + b.

inline bool is_reduced_indefinite(const QuadForm& f) {
  const long long disc = f.discriminant();
  const long long r = isqrt(disc);
  if (f.b <= 0 || f.b > r || f.a == 0) return false;
  const long long a2 = 2 * (f.a < 0 ? -f.a : f.a);
  const __int128 lo = a2 + f.b, hi = a2 - f.b;
  return lo * lo > disc && (hi <= 0 || hi * hi < disc);
}

/// One step of the reduction operator: (a, b, c) -> (c, b', (b'^2 - D) / 4c)
/// with b' = -b mod 2|c| normalized against sqrt(D). A proper equivalence.
inline QuadForm rho(const QuadForm& f) {
  const long long disc = f.discriminant();
  const long long r = isqrt(disc);
  const long long ac = f.c < 0 ? -f.c : f.c;
  const long long m = 2 * ac;
  long long b;
  if (static_cast<__int128>(ac) * ac > disc) {
    b = mod(-f.b, m);
    if (b > ac) b -= m;
  } else {
    b = r - mod(r + f.b, m);
  }
  return {f.c, b, (b * b - disc) / (4 * f.c)};
}

inline QuadForm reduce_indefinite(QuadForm f) {
  const long long disc = f.discriminant();
  const long long r = isqrt(disc);
  if (disc <= 0 || r * r == disc) throw Error(ErrorKind::InvalidArgument, "not indefinite: " + f.to_string());
  for (int step = 0; !is_reduced_indefinite(f); ++step) {
    if (step > 10000) throw std::logic_error("indefinite reduction did not terminate on " + f.to_string());
    f = rho(f);
  }
  return f;
}

inline QuadForm reduce(const QuadForm& f) {
  return f.discriminant() < 0 ? reduce_definite(f) : reduce_indefinite(f);
}

// ---------------------------------------------------------------------------
// Dirichlet composition.

namespace detail {

struct Egcd {
  long long g, x, y;
};

inline Egcd egcd(long long a, long long b) {
  long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const long long q = fdiv(a, b);
    const long long t = a - q * b;
    a = b;
    b = t;
    const long long tx = x0 - q * x1, ty = y0 - q * y1;
    x0 = x1;
    y0 = y1;
    x1 = tx;
    y1 = ty;
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

inline long long mod128(__int128 a, long long m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<long long>(r);
}

}  // namespace detail

/// Composition of two primitive forms of the same discriminant (unreduced).
inline QuadForm compose_raw(const QuadForm& f, const QuadForm& g) {
  const long long disc = f.discriminant();
  if (g.discriminant() != disc)
    throw Error(ErrorKind::InvalidArgument, "discriminants differ: " + f.to_string() + " " + g.to_string());
  const long long beta = (f.b + g.b) / 2;
  const auto e1 = detail::egcd(f.a, g.a);
  const auto e2 = detail::egcd(e1.g, beta);
  const long long n = e2.g;
  const __int128 u = static_cast<__int128>(e2.x) * e1.x, v = static_cast<__int128>(e2.x) * e1.y, w = e2.y;
  const __int128 num = u * f.a * g.b + v * g.a * f.b + w * ((static_cast<__int128>(f.b) * g.b + disc) / 2);
  const __int128 a3 = static_cast<__int128>(f.a / n) * (g.a / n);
  const long long big_b = static_cast<long long>(num / n);
  const long long m = static_cast<long long>(2 * (a3 < 0 ? -a3 : a3));
  const long long b3 = detail::mod128(big_b, m);
  const __int128 c3 = (static_cast<__int128>(b3) * b3 - disc) / (4 * a3);
  return {static_cast<long long>(a3), b3, static_cast<long long>(c3)};
}

inline QuadForm compose(const QuadForm& f, const QuadForm& g) { return reduce(compose_raw(f, g)); }

// ---------------------------------------------------------------------------
// The form class group.

class FormClassGroup {
 public:
  /// All reduced primitive forms of discriminant disc (positive definite when
  /// disc < 0), grouped into proper-equivalence classes.
  explicit FormClassGroup(long long disc) : disc_(disc), table_({}, 0) {
    if (mod(disc, 4) > 1) throw Error(ErrorKind::InvalidArgument, "discriminant must be 0 or 1 mod 4");
    const long long r = isqrt(disc < 0 ? 0 : disc);
    if (disc > 0 && r * r == disc) throw Error(ErrorKind::InvalidArgument, "square discriminant");
    if (disc == 0) throw Error(ErrorKind::InvalidArgument, "zero discriminant");
    if (disc < 0)
      enumerate_definite();
    else
      enumerate_indefinite(r);
    build_table();
  }

  long long discriminant() const noexcept { return disc_; }
  std::size_t class_number() const noexcept { return reps_.size(); }
  const std::vector<QuadForm>& representatives() const noexcept { return reps_; }
  const FiniteAbelianTable& table() const noexcept { return table_; }

  /// Class index of any primitive form of this discriminant.
  std::size_t class_of(const QuadForm& f) const {
    const auto it = index_.find(reduce(f));
    if (it == index_.end()) throw std::logic_error("form " + f.to_string() + " not in any reduced class");
    return it->second;
  }

  std::size_t identity() const { return class_of(principal_form(disc_)); }

  /// The class of (-1, b0, -c0), which is principal exactly when the
  /// fundamental unit has norm -1. Only meaningful for disc > 0.
  std::size_t sign_class() const {
    const QuadForm p = principal_form(disc_);
    return class_of({-p.a, p.b, -p.c});
  }

 private:
  void enumerate_definite() {
    std::vector<QuadForm> forms;
    for (long long a = 1; 3 * a * a <= -disc_; ++a)
      for (long long b = -a + 1; b <= a; ++b) {
        const long long num = b * b - disc_;
        if (num % (4 * a) != 0) continue;
        const QuadForm f{a, b, num / (4 * a)};
        if (is_reduced_definite(f) && f.primitive()) forms.push_back(f);
      }
    for (const auto& f : forms) {
      index_[f] = reps_.size();
      reps_.push_back(f);
    }
  }

  void enumerate_indefinite(long long r) {
    std::vector<QuadForm> forms;
    for (long long b = 1; b <= r; ++b) {
      if (mod(b, 2) != mod(disc_, 2)) continue;
      const long long num = b * b - disc_;
      for (long long a = 1; a <= r; ++a) {
        if (num % (4 * a) != 0) continue;
        for (long long sa : {a, -a}) {
          const QuadForm f{sa, b, num / (4 * sa)};
          if (is_reduced_indefinite(f) && f.primitive()) forms.push_back(f);
        }
      }
    }
    std::sort(forms.begin(), forms.end());
    for (const auto& f : forms) {
      if (index_.count(f)) continue;
      const std::size_t id = reps_.size();
      reps_.push_back(f);
      QuadForm g = f;
      do {
        index_[g] = id;
        g = rho(g);
      } while (g != f);
    }
  }

  void build_table() {
    const std::size_t h = reps_.size();
    std::vector<std::vector<std::size_t>> t(h, std::vector<std::size_t>(h));
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = i; j < h; ++j) t[i][j] = t[j][i] = class_of(compose_raw(reps_[i], reps_[j]));
    table_ = FiniteAbelianTable(std::move(t), identity());
  }

  long long disc_;
  std::vector<QuadForm> reps_;
  std::map<QuadForm, std::size_t> index_;
  FiniteAbelianTable table_;
};

}  // namespace arithtop
