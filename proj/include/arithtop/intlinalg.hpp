#pragma once

// Exact integer matrix algebra: Smith normal form with transforms, lattice
// membership, and kernels/images/quotients of maps between finitely
// generated abelian groups given by relation matrices.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arithtop/error.hpp"

namespace arithtop {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers. Zero-row and
/// zero-column shapes are valid and denote maps from/to the trivial group.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a rows x cols.size() matrix whose j-th column is cols[j].
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length differs from row count");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static IntMatrix diagonal(const IntVector& entries) {
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  /// Sub-matrix on the given row and column index lists.
  IntMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
    IntMatrix m(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) m(i, j) = (*this)(row_idx[i], col_idx[j]);
    return m;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += q * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
  }
  /// col[dst] += q * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols_ != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes");
    IntVector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) y[i] += a(i, k) * x[k];
    return y;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shapes");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "hconcat row counts");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline IntMatrix matrix_power(const IntMatrix& a, unsigned k) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "power of non-square matrix");
  IntMatrix result = IntMatrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) result = result * a;
  return result;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return n == 0 ? Integer(1) : Integer(sign * a(n - 1, n - 1));
}

/// U * source * V = S with U, V unimodular and S diagonal, nonnegative, each
/// diagonal entry dividing the next (zeros last). u_inv is U^{-1}, kept so
/// callers can move between the original and the Smith coordinates.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix s;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix source;

  std::size_t diagonal_length() const { return std::min(s.rows(), s.cols()); }

  IntVector diagonal() const {
    IntVector d(diagonal_length());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = s(i, i);
    return d;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < diagonal_length() && s(r, r) != 0) ++r;
    return r;
  }
};

namespace detail {

// Position of a nonzero entry of least absolute value in the trailing block.
inline std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix& s, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      const Integer& e = s(i, j);
      if (e == 0) continue;
      Integer a = abs(e);
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = a;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form with minimal-absolute-value pivoting. Deterministic for
/// a fixed input; accepts any shape including empty and zero matrices.
inline SmithDecomposition snf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix u_inv = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  // Row ops act on s and u; u_inv receives the inverse column op.
  auto row_swap = [&](std::size_t i, std::size_t j) {
    s.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    s.add_row_multiple(dst, src, q);
    u.add_row_multiple(dst, src, q);
    u_inv.add_col_multiple(src, dst, -q);
  };
  auto row_negate = [&](std::size_t i) {
    s.negate_row(i);
    u.negate_row(i);
    u_inv.negate_col(i);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    s.swap_cols(i, j);
    v.swap_cols(i, j);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    s.add_col_multiple(dst, src, q);
    v.add_col_multiple(dst, src, q);
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    bool exhausted = false;
    for (;;) {
      auto pivot = detail::min_pivot(s, t);
      if (!pivot) {
        exhausted = true;
        break;
      }
      row_swap(t, pivot->first);
      col_swap(t, pivot->second);

      bool clean = true;
      Integer q;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
        if (q != 0) row_add(i, t, -q);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
        if (q != 0) col_add(j, t, -q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot isolated; enforce divisibility over the trailing block.
      std::optional<std::size_t> offending_row;
      for (std::size_t i = t + 1; i < m && !offending_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
            offending_row = i;
            break;
          }
      if (!offending_row) break;
      row_add(t, *offending_row, Integer(1));
    }
    if (exhausted) break;
    if (s(t, t) < 0) row_negate(t);
  }
  return SmithDecomposition{std::move(u), std::move(s), std::move(v), std::move(u_inv), a};
}

/// Solves A x = b over the integers using a cached Smith decomposition of A.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& a) : smith_(snf(a)) {}

  const SmithDecomposition& smith() const noexcept { return smith_; }

  std::optional<IntVector> solve(const IntVector& b) const {
    const IntMatrix& a = smith_.source;
    if (b.size() != a.rows())
      throw Error(ErrorKind::DimensionMismatch,
                  "right-hand side has " + std::to_string(b.size()) + " entries, matrix has " +
                      std::to_string(a.rows()) + " rows");
    IntVector c = smith_.u * b;
    IntVector y(a.cols());
    const std::size_t diag = smith_.diagonal_length();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < diag && smith_.s(i, i) != 0) {
        if (!mpz_divisible_p(c[i].get_mpz_t(), smith_.s(i, i).get_mpz_t())) return std::nullopt;
        mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), smith_.s(i, i).get_mpz_t());
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    return smith_.v * y;
  }

  bool contains(const IntVector& b) const { return solve(b).has_value(); }

 private:
  SmithDecomposition smith_;
};

/// Some x with A x = b, or nullopt when b is outside the column lattice of A.
inline std::optional<IntVector> lattice_member(const IntMatrix& a, const IntVector& b) {
  return LatticeSolver(a).solve(b);
}

/// Generators of {x : A x = 0} as the columns of the returned matrix, which
/// form a lattice basis of the kernel.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithDecomposition d = snf(a);
  const std::size_t r = d.rank();
  std::vector<std::size_t> rows(a.cols()), cols;
  for (std::size_t i = 0; i < a.cols(); ++i) rows[i] = i;
  for (std::size_t j = r; j < a.cols(); ++j) cols.push_back(j);
  return d.v.select(rows, cols);
}

/// A basis (linearly independent columns) of the lattice spanned by the
/// columns of `gens`.
inline IntMatrix lattice_basis(const IntMatrix& gens) {
  const SmithDecomposition d = snf(gens);
  const std::size_t r = d.rank();
  IntMatrix basis(gens.rows(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < gens.rows(); ++i) basis(i, j) = d.u_inv(i, j) * d.s(j, j);
  return basis;
}

/// Finitely generated abelian group Z^m / (column lattice of relations),
/// together with its normalized invariants. Unit invariant factors are
/// dropped; the free rank counts Z summands.
class FgAbGroup {
 public:
  FgAbGroup() = default;

  explicit FgAbGroup(IntMatrix relations) : relations_(std::move(relations)) {
    const SmithDecomposition d = snf(relations_);
    const std::size_t r = d.rank();
    for (std::size_t i = 0; i < r; ++i)
      if (d.s(i, i) != 1) invariant_factors_.push_back(d.s(i, i));
    free_rank_ = relations_.rows() - r;
  }

  /// Z/n1 x ... x Z/nk x Z^free as a group on k + free generators.
  static FgAbGroup from_invariants(const IntVector& factors, std::size_t free_rank = 0) {
    IntMatrix rel(factors.size() + free_rank, factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) rel(i, i) = factors[i];
    return FgAbGroup(std::move(rel));
  }

  std::size_t ambient_rank() const noexcept { return relations_.rows(); }
  const IntMatrix& relations() const noexcept { return relations_; }
  const IntVector& invariant_factors() const noexcept { return invariant_factors_; }
  std::size_t free_rank() const noexcept { return free_rank_; }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && invariant_factors_.empty(); }

  /// Order of the torsion subgroup.
  Integer torsion_order() const {
    Integer n = 1;
    for (const auto& f : invariant_factors_) n *= f;
    return n;
  }

  /// Number of cyclic factors whose order is divisible by `prime`.
  std::size_t p_rank(unsigned long prime) const {
    return static_cast<std::size_t>(std::count_if(invariant_factors_.begin(), invariant_factors_.end(),
                                                  [&](const Integer& f) { return mpz_divisible_ui_p(f.get_mpz_t(), prime) != 0; }));
  }

  /// Same invariants, i.e. isomorphic as abstract groups.
  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.invariant_factors_ == b.invariant_factors_;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string out;
    for (const auto& f : invariant_factors_) out += (out.empty() ? "" : " + ") + ("Z/" + f.get_str());
    if (free_rank_ > 0) out += (out.empty() ? "" : " + ") + ("Z^" + std::to_string(free_rank_));
    return out;
  }

 private:
  IntMatrix relations_;
  IntVector invariant_factors_;
  std::size_t free_rank_ = 0;
};

inline FgAbGroup cokernel(const IntMatrix& relations) { return FgAbGroup(relations); }

/// Ker(phi) / Im(psi) for endomorphisms phi, psi of G = Z^m / L(R), both given
/// by m x m integer matrices acting on generators. The result is
/// {x : phi x in L(R)} / (L(psi) + L(R)).
inline FgAbGroup induced_subquotient(const FgAbGroup& g, const IntMatrix& ker_of, const IntMatrix& im_of) {
  const std::size_t m = g.ambient_rank();
  if (ker_of.rows() != m || ker_of.cols() != m || im_of.rows() != m || im_of.cols() != m)
    throw Error(ErrorKind::DimensionMismatch, "endomorphisms must be " + std::to_string(m) + "x" + std::to_string(m));
  const IntMatrix& rel = g.relations();
  const LatticeSolver rel_lattice(rel);

  for (const IntMatrix* map : {&ker_of, &im_of}) {
    const IntMatrix image = (*map) * rel;
    for (std::size_t j = 0; j < image.cols(); ++j)
      if (!rel_lattice.contains(image.column(j)))
        throw Error(ErrorKind::MapDoesNotDescend,
                    "image of relation column " + std::to_string(j) + " leaves the relation lattice");
  }

  // Preimage lattice K = {x : phi x - R y = 0 for some y}.
  IntMatrix neg_rel = rel;
  for (std::size_t i = 0; i < neg_rel.rows(); ++i)
    for (std::size_t j = 0; j < neg_rel.cols(); ++j) neg_rel(i, j) = -neg_rel(i, j);
  const IntMatrix ker = integer_kernel(hconcat(ker_of, neg_rel));
  std::vector<std::size_t> top(m), all_cols(ker.cols());
  for (std::size_t i = 0; i < m; ++i) top[i] = i;
  for (std::size_t j = 0; j < ker.cols(); ++j) all_cols[j] = j;
  const IntMatrix basis = lattice_basis(ker.select(top, all_cols));

  const LatticeSolver in_basis(basis);
  const IntMatrix denominators = hconcat(im_of, rel);
  std::vector<IntVector> coords;
  coords.reserve(denominators.cols());
  for (std::size_t j = 0; j < denominators.cols(); ++j) {
    auto c = in_basis.solve(denominators.column(j));
    if (!c)
      throw Error(ErrorKind::InclusionFails,
                  "generator " + std::to_string(j) + " of the image is not in the kernel");
    coords.push_back(std::move(*c));
  }
  return FgAbGroup(IntMatrix::from_columns(basis.cols(), coords));
}

}  // namespace arithtop
