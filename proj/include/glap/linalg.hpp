#pragma once

// Exact linear algebra over Q: incremental reduced row echelon form,
// kernels, span coordinates, congruence signatures and rational eigen-splitting.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "glap/matrix.hpp"
#include "glap/rational.hpp"

namespace glap {

class NotSymmetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reduced row echelon form maintained incrementally.
///
/// Every stored row has a leading 1 in its pivot column and zeros in all other
/// pivot columns, so reducing an incoming row needs one left-to-right sweep.
/// The final RREF depends only on the row space, never on insertion order.
class RowReducer {
 public:
  explicit RowReducer(std::size_t cols) : cols_(cols), row_of_col_(cols, -1) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Returns the residue of `v` after elimination against the current rows.
  Vector reduce(Vector v) const {
    check(v);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(v[c]) == 0) continue;
      int r = row_of_col_[c];
      if (r < 0) continue;
      Rational f = v[c];
      const Vector& row = rows_[static_cast<std::size_t>(r)];
      for (std::size_t j = c; j < cols_; ++j)
        if (sgn(row[j]) != 0) v[j] -= f * row[j];
    }
    return v;
  }

  bool in_span(const Vector& v) const { return is_zero(reduce(v)); }

  /// Adds a row; returns true iff the rank grew.
  bool add_row(Vector v) {
    v = reduce(std::move(v));
    std::size_t lead = cols_;
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(v[c]) != 0) {
        lead = c;
        break;
      }
    if (lead == cols_) return false;
    Rational inv = 1 / v[lead];
    for (std::size_t j = lead; j < cols_; ++j)
      if (sgn(v[j]) != 0) v[j] *= inv;
    for (auto& row : rows_) {
      if (sgn(row[lead]) == 0) continue;
      Rational f = row[lead];
      for (std::size_t j = lead; j < cols_; ++j)
        if (sgn(v[j]) != 0) row[j] -= f * v[j];
    }
    row_of_col_[lead] = static_cast<int>(rows_.size());
    pivots_.push_back(lead);
    rows_.push_back(std::move(v));
    return true;
  }

  bool add_row(const SparseVector& v) { return add_row(to_dense(v, cols_)); }

  /// Kernel basis of the stored rows. One vector per free column in
  /// ascending order, with that free variable set to 1 and the others 0.
  std::vector<Vector> kernel_basis() const {
    std::vector<Vector> out;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (row_of_col_[f] >= 0) continue;
      Vector v = zero_vector(cols_);
      v[f] = 1;
      for (std::size_t r = 0; r < rows_.size(); ++r)
        if (sgn(rows_[r][f]) != 0) v[pivots_[r]] = -rows_[r][f];
      out.push_back(std::move(v));
    }
    return out;
  }

  /// Rows of the RREF ordered by pivot column.
  std::vector<Vector> rref_rows() const {
    std::vector<Vector> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (row_of_col_[c] >= 0) out.push_back(rows_[static_cast<std::size_t>(row_of_col_[c])]);
    return out;
  }

  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (row_of_col_[c] >= 0) out.push_back(c);
    return out;
  }

 private:
  void check(const Vector& v) const {
    if (v.size() != cols_) throw DimensionMismatch("row length does not match reducer width");
  }

  std::size_t cols_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<int> row_of_col_;
};

/// Basis of {v : Mv = 0} in canonical echelon form.
inline std::vector<Vector> kernel_basis(const RationalMatrix& m) {
  RowReducer red(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add_row(m.row(r));
  return red.kernel_basis();
}

inline std::size_t rank(const RationalMatrix& m) {
  RowReducer red(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) red.add_row(m.row(r));
  return red.rank();
}

inline std::size_t rank_of(const std::vector<Vector>& vectors, std::size_t dim) {
  RowReducer red(dim);
  for (const auto& v : vectors) red.add_row(v);
  return red.rank();
}

inline bool is_invertible(const RationalMatrix& m) { return m.square() && rank(m) == m.rows(); }

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return RationalMatrix();
  RowReducer red(2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    Vector row = zero_vector(2 * n);
    for (std::size_t c = 0; c < n; ++c) row[c] = m(r, c);
    row[n + r] = 1;
    red.add_row(row);
  }
  auto rows = red.rref_rows();
  if (red.pivot_columns()[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = rows[r][n + c];
  return inv;
}

/// Some x with Ax = b, or nullopt if the system is inconsistent.
inline std::optional<Vector> solve(const RationalMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: right-hand side has wrong length");
  const std::size_t n = a.cols();
  RowReducer red(n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Vector row = a.row(r);
    row.push_back(b[r]);
    red.add_row(std::move(row));
  }
  Vector x = zero_vector(n);
  for (const auto& row : red.rref_rows()) {
    std::size_t lead = 0;
    while (sgn(row[lead]) == 0) ++lead;
    if (lead == n) return std::nullopt;
    x[lead] = row[n];
  }
  return x;
}

/// Canonical basis (RREF rows) of the span of `vectors`; equal spans give
/// equal results.
inline std::vector<Vector> canonical_span(const std::vector<Vector>& vectors, std::size_t dim) {
  RowReducer red(dim);
  for (const auto& v : vectors) red.add_row(v);
  return red.rref_rows();
}

/// Coordinates of vectors with respect to a fixed independent family.
class SpanCoordinates {
 public:
  SpanCoordinates(const std::vector<Vector>& basis, std::size_t dim)
      : dim_(dim), count_(basis.size()), red_(dim + basis.size()) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].size() != dim) throw DimensionMismatch("basis vector has wrong length");
      Vector row = basis[i];
      row.resize(dim + count_, Rational(0));
      row[dim + i] = 1;
      red_.add_row(std::move(row));
    }
    for (std::size_t c : red_.pivot_columns())
      if (c >= dim) throw std::invalid_argument("SpanCoordinates: basis is linearly dependent");
  }

  std::size_t size() const { return count_; }

  /// Coordinates of `v`, or nullopt if `v` is not in the span.
  std::optional<Vector> coordinates(const Vector& v) const {
    if (v.size() != dim_) throw DimensionMismatch("vector has wrong length");
    Vector row = v;
    row.resize(dim_ + count_, Rational(0));
    row = red_.reduce(std::move(row));
    for (std::size_t i = 0; i < dim_; ++i)
      if (sgn(row[i]) != 0) return std::nullopt;
    Vector c(row.begin() + static_cast<std::ptrdiff_t>(dim_), row.end());
    for (auto& x : c) x = -x;
    return c;
  }

 private:
  std::size_t dim_;
  std::size_t count_;
  RowReducer red_;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Sylvester signature by exact congruence diagonalization.
inline Signature signature_of_symmetric(const RationalMatrix& s) {
  if (!s.is_symmetric()) throw NotSymmetric("signature_of_symmetric: matrix is not symmetric");
  RationalMatrix a = s;
  const std::size_t n = a.rows();
  auto swap_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(a(k, i), a(k, j));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a(i, i)) == 0) {
      std::size_t j = i + 1;
      while (j < n && sgn(a(j, j)) == 0) ++j;
      if (j < n) {
        swap_index(i, j);
      } else {
        j = i + 1;
        while (j < n && sgn(a(i, j)) == 0) ++j;
        if (j == n) continue;
        // a(i,i) becomes 2 a(i,j) since both diagonal entries vanish.
        for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
        for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
      }
    }
    const Rational pivot = a(i, i);
    for (std::size_t k = i + 1; k < n; ++k) {
      if (sgn(a(k, i)) == 0) continue;
      Rational f = a(k, i) / pivot;
      for (std::size_t c = 0; c < n; ++c) a(k, c) -= f * a(i, c);
      for (std::size_t r = 0; r < n; ++r) a(r, k) -= f * a(r, i);
    }
  }
  Signature sig;
  for (std::size_t i = 0; i < n; ++i) {
    int sg = sgn(a(i, i));
    if (sg > 0) ++sig.positive;
    else if (sg < 0) ++sig.negative;
    else ++sig.zero;
  }
  return sig;
}

/// Polynomial with rational coefficients, lowest degree first.
using Polynomial = std::vector<Rational>;

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier.
inline Polynomial characteristic_polynomial(const RationalMatrix& m) {
  if (!m.square()) throw DimensionMismatch("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  Polynomial c(n + 1, Rational(0));
  c[n] = 1;
  RationalMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    c[n - k] = -(m * mk).trace() / Rational(static_cast<long>(k));
  }
  return c;
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, unsigned>> factors;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : factors) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

inline Rational evaluate(const Polynomial& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// Divides p by (x - r), assuming r is a root.
inline Polynomial deflate(const Polynomial& p, const Rational& r) {
  const std::size_t d = p.size() - 1;
  Polynomial q(d, Rational(0));
  Rational carry = p[d];
  for (std::size_t i = d; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + carry * r;
  }
  return q;
}

}  // namespace detail

/// Distinct rational roots of p together with the cofactor that has none.
inline std::pair<std::vector<Rational>, Polynomial> rational_roots(Polynomial p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
  std::vector<Rational> roots;
  auto add_root = [&](const Rational& r) {
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  };
  while (p.size() > 1 && sgn(p[0]) == 0) {
    add_root(Rational(0));
    p.erase(p.begin());
  }
  bool changed = true;
  while (changed && p.size() > 1) {
    changed = false;
    Integer lcm = 1;
    for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> ints;
    for (const auto& c : p) ints.push_back(Integer(c * lcm));
    auto nums = detail::positive_divisors(ints.front());
    auto dens = detail::positive_divisors(ints.back());
    for (const auto& a : nums) {
      for (const auto& b : dens) {
        for (int sign : {1, -1}) {
          Rational r(a * sign, b);
          r.canonicalize();
          if (sgn(detail::evaluate(p, r)) == 0) {
            add_root(r);
            p = detail::deflate(p, r);
            changed = true;
            break;
          }
        }
        if (changed) break;
      }
      if (changed) break;
    }
  }
  std::sort(roots.begin(), roots.end());
  return {roots, p};
}

struct Eigenspace {
  Rational value;
  std::vector<Vector> basis;
};

struct EigenSplit {
  std::vector<Eigenspace> spaces;
  /// Invariant complement on which M has no rational eigenvalue.
  std::vector<Vector> residual;
  /// True iff the eigenspaces alone span the whole space.
  bool complete(std::size_t dim) const {
    std::size_t total = 0;
    for (const auto& s : spaces) total += s.basis.size();
    return total == dim;
  }
};

inline RationalMatrix evaluate_polynomial(const Polynomial& p, const RationalMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix acc(n, n);
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t k = 0; k < n; ++k) acc(k, k) += p[i];
  }
  return acc;
}

/// Rational eigenvalues with exact eigenspaces, plus the residual invariant
/// subspace ker q(M) where q is the characteristic polynomial stripped of
/// its rational linear factors.
inline EigenSplit rational_eigensplit(const RationalMatrix& m) {
  if (!m.square()) throw DimensionMismatch("eigensplit of a non-square matrix");
  const std::size_t n = m.rows();
  EigenSplit out;
  if (n == 0) return out;
  auto [roots, rest] = rational_roots(characteristic_polynomial(m));
  for (const auto& r : roots) {
    RationalMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= r;
    out.spaces.push_back({r, kernel_basis(shifted)});
  }
  if (rest.size() > 1) out.residual = kernel_basis(evaluate_polynomial(rest, m));
  return out;
}

}  // namespace glap
