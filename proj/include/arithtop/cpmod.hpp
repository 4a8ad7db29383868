#pragma once

// C_p-modules: a finitely generated abelian group with an automorphism tau of
// order dividing p, and their Tate cohomology
//   H^0 = Ker(tau - 1) / Im(N),   H^1 = Ker(N) / Im(tau - 1),
// with N = 1 + tau + ... + tau^{p-1}.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arithtop/error.hpp"
#include "arithtop/intlinalg.hpp"

namespace arithtop {

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class CpModule {
 public:
  /// Validating constructor: tau must descend to Z^m / L(relations), act
  /// invertibly there, and satisfy tau^p == 1 on the group.
  static CpModule create(int p, IntMatrix relations, IntMatrix tau) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    const std::size_t m = relations.rows();
    if (tau.rows() != m || tau.cols() != m)
      throw Error(ErrorKind::DimensionMismatch,
                  "tau must be " + std::to_string(m) + "x" + std::to_string(m) + ", got " +
                      std::to_string(tau.rows()) + "x" + std::to_string(tau.cols()));

    const LatticeSolver lattice(relations);
    const IntMatrix moved = tau * relations;
    for (std::size_t j = 0; j < moved.cols(); ++j)
      if (!lattice.contains(moved.column(j)))
        throw Error(ErrorKind::TauDoesNotDescend,
                    "tau maps relation column " + std::to_string(j) + " outside the relation lattice");

    // A surjective endomorphism of a finitely generated abelian group is an
    // automorphism, so invertibility is Im(tau) + L(R) == Z^m.
    if (!FgAbGroup(hconcat(tau, relations)).is_trivial())
      throw Error(ErrorKind::TauNotInvertible, "tau is not surjective on the group");

    const IntMatrix defect = matrix_power(tau, static_cast<unsigned>(p)) - IntMatrix::identity(m);
    for (std::size_t j = 0; j < m; ++j)
      if (!lattice.contains(defect.column(j)))
        throw Error(ErrorKind::TauOrderNotDividingP,
                    "tau^" + std::to_string(p) + " differs from the identity on generator " + std::to_string(j));

    return CpModule(p, FgAbGroup(std::move(relations)), std::move(tau));
  }

  int p() const noexcept { return p_; }
  const FgAbGroup& group() const noexcept { return group_; }
  const IntMatrix& tau() const noexcept { return tau_; }
  std::size_t generators() const noexcept { return group_.ambient_rank(); }

 private:
  CpModule(int p, FgAbGroup group, IntMatrix tau) : p_(p), group_(std::move(group)), tau_(std::move(tau)) {}

  int p_;
  FgAbGroup group_;
  IntMatrix tau_;
};

inline CpModule new_cp_module(int p, IntMatrix relations, IntMatrix tau) {
  return CpModule::create(p, std::move(relations), std::move(tau));
}

struct TateCohomology {
  FgAbGroup h0;  ///< Ker S / Im N
  FgAbGroup h1;  ///< Ker N / Im S
  std::size_t dim_h0 = 0;
  std::size_t dim_h1 = 0;
};

/// Multiplicities of the free (F), trivial (T) and augmentation-ideal (AI)
/// summands after localizing at p, read off the cohomological signature.
struct TypeMultiplicities {
  std::size_t f = 0;
  std::size_t t = 0;
  std::size_t a = 0;

  friend bool operator==(const TypeMultiplicities&, const TypeMultiplicities&) = default;
};

// ---------------------------------------------------------------------------
// Standard modules.

/// Z (or Z/n when n > 0) with trivial action.
inline CpModule trivial_module(int p, long n = 0) {
  IntMatrix rel(1, n == 0 ? 0 : 1);
  if (n != 0) rel(0, 0) = n;
  return CpModule::create(p, std::move(rel), IntMatrix::identity(1));
}

/// The regular representation Z[C_p] (or (Z/n)[C_p]): tau cyclically permutes
/// p basis vectors.
inline CpModule regular_module(int p, long n = 0) {
  const auto size = static_cast<std::size_t>(p);
  IntMatrix tau(size, size);
  for (std::size_t i = 0; i < size; ++i) tau((i + 1) % size, i) = 1;
  IntMatrix rel(size, n == 0 ? 0 : size);
  if (n != 0)
    for (std::size_t i = 0; i < size; ++i) rel(i, i) = n;
  return CpModule::create(p, std::move(rel), std::move(tau));
}

/// Z[x]/(1 + x + ... + x^{p-1}) with tau = multiplication by x (companion
/// matrix), i.e. the augmentation ideal up to isomorphism.
inline CpModule augmentation_module(int p) {
  const auto size = static_cast<std::size_t>(p - 1);
  IntMatrix tau(size, size);
  for (std::size_t i = 0; i + 1 < size; ++i) tau(i + 1, i) = 1;
  for (std::size_t i = 0; i < size; ++i) tau(i, size - 1) = -1;
  return CpModule::create(p, IntMatrix(size, 0), std::move(tau));
}

/// The zero module.
inline CpModule zero_module(int p) { return CpModule::create(p, IntMatrix(0, 0), IntMatrix(0, 0)); }

// ---------------------------------------------------------------------------

inline IntMatrix norm_operator(const CpModule& m) {
  const std::size_t n = m.generators();
  IntMatrix sum(n, n), power = IntMatrix::identity(n);
  for (int i = 0; i < m.p(); ++i) {
    sum = sum + power;
    power = power * m.tau();
  }
  return sum;
}

inline IntMatrix augmentation_operator(const CpModule& m) {
  return m.tau() - IntMatrix::identity(m.generators());
}

inline TateCohomology tate(const CpModule& m) {
  const IntMatrix s = augmentation_operator(m);
  const IntMatrix n = norm_operator(m);
  TateCohomology out{induced_subquotient(m.group(), s, n), induced_subquotient(m.group(), n, s), 0, 0};
  for (const FgAbGroup* h : {&out.h0, &out.h1}) {
    bool elementary = h->is_finite();
    for (const auto& f : h->invariant_factors()) elementary = elementary && f == m.p();
    if (!elementary)
      throw std::logic_error("Tate cohomology is not an elementary abelian p-group: " + h->to_string());
  }
  out.dim_h0 = out.h0.invariant_factors().size();
  out.dim_h1 = out.h1.invariant_factors().size();
  return out;
}

/// dim H^0 == dim H^1, which holds for every finite module.
inline bool herbrand_check(const CpModule& m) {
  if (!m.group().is_finite())
    throw Error(ErrorKind::ModuleNotFinite, "group has free rank " + std::to_string(m.group().free_rank()));
  const TateCohomology t = tate(m);
  return t.dim_h0 == t.dim_h1;
}

inline TypeMultiplicities classify_free(const CpModule& m) {
  if (!m.group().invariant_factors().empty())
    throw Error(ErrorKind::ModuleNotTorsionFree, "group has torsion " + m.group().to_string());
  const TateCohomology t = tate(m);
  const auto rank = static_cast<long long>(m.group().free_rank());
  const auto p = static_cast<long long>(m.p());
  const long long rest = rank - static_cast<long long>(t.dim_h0) - static_cast<long long>(t.dim_h1) * (p - 1);
  if (rest < 0 || rest % p != 0)
    throw Error(ErrorKind::InconsistentRank, "rank " + std::to_string(rank) + " does not fit the signature (" +
                                                 std::to_string(t.dim_h0) + "," + std::to_string(t.dim_h1) + ")");
  return {static_cast<std::size_t>(rest / p), t.dim_h0, t.dim_h1};
}

/// M^{C_p} = Ker(tau - 1).
inline FgAbGroup fixed_points(const CpModule& m) {
  const std::size_t n = m.generators();
  return induced_subquotient(m.group(), augmentation_operator(m), IntMatrix(n, n));
}

/// Same group with tau replaced by its inverse tau^{p-1}.
inline CpModule sharp_dual(const CpModule& m) {
  return CpModule::create(m.p(), m.group().relations(),
                          matrix_power(m.tau(), static_cast<unsigned>(m.p() - 1)));
}

inline CpModule direct_sum(const CpModule& a, const CpModule& b) {
  if (a.p() != b.p())
    throw Error(ErrorKind::PrimeMismatch, std::to_string(a.p()) + " vs " + std::to_string(b.p()));
  return CpModule::create(a.p(), block_diagonal(a.group().relations(), b.group().relations()),
                          block_diagonal(a.tau(), b.tau()));
}

/// Rewrites relations and tau in a new basis: generator matrix W (unimodular,
/// with inverse w_inv) sends old coordinates x to W x.
inline CpModule change_basis(const CpModule& m, const IntMatrix& w, const IntMatrix& w_inv) {
  return CpModule::create(m.p(), w * m.group().relations(), w * m.tau() * w_inv);
}

namespace detail {

/// The module in Smith coordinates of its relation matrix, split into the
/// torsion block and the free block. Generators that are zero in the group
/// (unit invariant factors) are dropped.
struct SmithSplit {
  CpModule torsion;
  CpModule free;
};

inline SmithSplit smith_split(const CpModule& m) {
  const SmithDecomposition d = snf(m.group().relations());
  const IntMatrix tau_smith = d.u * m.tau() * d.u_inv;
  const std::size_t n = m.generators();
  std::vector<std::size_t> tor, fre;
  IntVector orders;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer di = i < d.diagonal_length() ? d.s(i, i) : Integer(0);
    if (di == 0) {
      fre.push_back(i);
    } else if (di != 1) {
      tor.push_back(i);
      orders.push_back(di);
    }
  }
  // Torsion maps into torsion, so the free coordinates of tau(torsion) vanish.
  for (std::size_t t : tor)
    for (std::size_t f : fre)
      if (tau_smith(f, t) != 0) throw std::logic_error("tau does not preserve the torsion subgroup");

  IntMatrix tor_rel = IntMatrix::diagonal(orders);
  CpModule torsion = CpModule::create(m.p(), std::move(tor_rel), tau_smith.select(tor, tor));
  CpModule free = CpModule::create(m.p(), IntMatrix(fre.size(), 0), tau_smith.select(fre, fre));
  return {std::move(torsion), std::move(free)};
}

}  // namespace detail

/// Hom(M, Z) with tau acting through the transposed inverse.
inline CpModule star_dual(const CpModule& m) {
  if (!m.group().invariant_factors().empty())
    throw Error(ErrorKind::ModuleNotTorsionFree, "group has torsion " + m.group().to_string());
  const CpModule lattice = detail::smith_split(m).free;
  const IntMatrix inverse = matrix_power(lattice.tau(), static_cast<unsigned>(m.p() - 1));
  return CpModule::create(m.p(), IntMatrix(lattice.generators(), 0), inverse.transpose());
}

}  // namespace arithtop
