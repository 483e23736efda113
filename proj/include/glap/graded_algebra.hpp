#pragma once

// Finite-dimensional graded Lie algebras given by structure constants, and
// symmetric bilinear forms on their degree -1 component.

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glap/linalg.hpp"
#include "glap/matrix.hpp"
#include "glap/rational.hpp"

namespace glap {

class NonNegativeDegreePresent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One structure constant row: [e_i, e_j] = value (i != j).
struct BracketEntry {
  int i;
  int j;
  SparseVector value;
};

/// Graded Lie algebra over Q in a fixed basis. Immutable after construction;
/// [e_j, e_i] is derived from [e_i, e_j] by sign.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  GradedAlgebra(std::string name, std::vector<std::string> labels, std::vector<int> degrees,
                const std::vector<BracketEntry>& entries)
      : name_(std::move(name)), labels_(std::move(labels)), degrees_(std::move(degrees)) {
    if (labels_.size() != degrees_.size())
      throw DimensionMismatch("label and degree counts differ");
    const std::size_t n = dim();
    table_.assign(n * n, SparseVector{});
    std::vector<bool> seen(n * n, false);
    for (const auto& e : entries) {
      if (e.i < 0 || e.j < 0 || static_cast<std::size_t>(e.i) >= n || static_cast<std::size_t>(e.j) >= n)
        throw std::out_of_range("bracket index out of range");
      if (e.i == e.j) throw std::invalid_argument("diagonal bracket entry [e_i, e_i]");
      auto i = static_cast<std::size_t>(e.i), j = static_cast<std::size_t>(e.j);
      if (seen[i * n + j]) throw std::invalid_argument("duplicate bracket entry");
      seen[i * n + j] = seen[j * n + i] = true;
      Vector v = zero_vector(n);
      for (const auto& [k, x] : e.value) {
        if (k < 0 || static_cast<std::size_t>(k) >= n) throw std::out_of_range("bracket component out of range");
        v[static_cast<std::size_t>(k)] += x;
      }
      table_[i * n + j] = to_sparse(v);
      table_[j * n + i] = to_sparse(scaled(v, Rational(-1)));
    }
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return degrees_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(std::size_t i) const { return degrees_[i]; }

  const SparseVector& bracket(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  /// [e_i, v] for a sparse v.
  Vector bracket_basis(std::size_t i, const Vector& v) const {
    Vector out = zero_vector(dim());
    for (std::size_t t = 0; t < dim(); ++t)
      if (sgn(v[t]) != 0) axpy(out, v[t], bracket(i, t));
    return out;
  }

  /// Nonzero entries with i < j, in (i, j) order.
  std::vector<BracketEntry> entries() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = i + 1; j < dim(); ++j)
        if (!bracket(i, j).empty())
          out.push_back({static_cast<int>(i), static_cast<int>(j), bracket(i, j)});
    return out;
  }

  std::vector<std::size_t> indices_of_degree(int p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degrees_[i] == p) out.push_back(i);
    return out;
  }

  int min_degree() const { return degrees_.empty() ? 0 : *std::min_element(degrees_.begin(), degrees_.end()); }
  int max_degree() const { return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end()); }

  /// ad(e_i) as a dim x dim matrix (column t = [e_i, e_t]).
  RationalMatrix ad_matrix(std::size_t i) const {
    RationalMatrix m(dim(), dim());
    for (std::size_t t = 0; t < dim(); ++t)
      for (const auto& [k, x] : bracket(i, t)) m(static_cast<std::size_t>(k), t) = x;
    return m;
  }

  RationalMatrix ad_matrix(const Vector& x) const {
    RationalMatrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (sgn(x[i]) != 0) m += ad_matrix(i) * x[i];
    return m;
  }

  /// The subalgebra spanned by basis elements `keep` (assumed closed), with
  /// indices renumbered in the given order.
  GradedAlgebra restricted(const std::vector<std::size_t>& keep, std::string name) const {
    std::vector<int> new_index(dim(), -1);
    for (std::size_t a = 0; a < keep.size(); ++a) new_index[keep[a]] = static_cast<int>(a);
    std::vector<std::string> labels;
    std::vector<int> degrees;
    for (auto i : keep) {
      labels.push_back(labels_[i]);
      degrees.push_back(degrees_[i]);
    }
    std::vector<BracketEntry> entries;
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = a + 1; b < keep.size(); ++b) {
        SparseVector v;
        for (const auto& [k, x] : bracket(keep[a], keep[b])) {
          int nk = new_index[static_cast<std::size_t>(k)];
          if (nk < 0) throw std::invalid_argument("restricted: span is not closed under the bracket");
          v.emplace_back(nk, x);
        }
        if (!v.empty()) {
          std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
          entries.push_back({static_cast<int>(a), static_cast<int>(b), std::move(v)});
        }
      }
    return GradedAlgebra(std::move(name), std::move(labels), std::move(degrees), entries);
  }

  /// Indices of negative degree in increasing index order.
  std::vector<std::size_t> negative_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim(); ++i)
      if (degrees_[i] < 0) out.push_back(i);
    return out;
  }

  GradedAlgebra negative_part() const { return restricted(negative_indices(), name_ + "-"); }

  friend bool operator==(const GradedAlgebra& a, const GradedAlgebra& b) {
    return a.name_ == b.name_ && a.labels_ == b.labels_ && a.degrees_ == b.degrees_ && a.table_ == b.table_;
  }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::vector<SparseVector> table_;
};

/// [x, y] for coordinate vectors x, y.
inline Vector bracket_eval(const GradedAlgebra& a, const Vector& x, const Vector& y) {
  if (x.size() != a.dim() || y.size() != a.dim())
    throw DimensionMismatch("bracket_eval: vector length differs from algebra dimension");
  Vector out = zero_vector(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i == j || sgn(y[j]) == 0) continue;
      axpy(out, x[i] * y[j], a.bracket(i, j));
    }
  }
  return out;
}

inline std::map<int, std::size_t> dims_by_degree(const GradedAlgebra& a) {
  std::map<int, std::size_t> out;
  for (int d : a.degrees()) ++out[d];
  return out;
}

struct GlaViolation {
  enum class Kind { Grading, Jacobi } kind;
  std::size_t i, j, k;

  std::string describe(const GradedAlgebra& a) const {
    if (kind == Kind::Grading)
      return "grading: [" + a.labels()[i] + ", " + a.labels()[j] + "] has a component on " + a.labels()[k];
    return "jacobi: (" + a.labels()[i] + ", " + a.labels()[j] + ", " + a.labels()[k] + ")";
  }
};

struct GlaReport {
  bool grading_ok = true;
  bool jacobi_ok = true;
  std::vector<GlaViolation> violations;
  bool ok() const { return grading_ok && jacobi_ok; }
};

/// Grading and exhaustive Jacobi check over all basis triples.
inline GlaReport check_gla(const GradedAlgebra& a) {
  GlaReport report;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& [k, x] : a.bracket(i, j))
        if (a.degree(static_cast<std::size_t>(k)) != a.degree(i) + a.degree(j)) {
          report.grading_ok = false;
          report.violations.push_back({GlaViolation::Kind::Grading, i, j, static_cast<std::size_t>(k)});
        }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vector sum = zero_vector(n);
        for (const auto& [t, x] : a.bracket(j, k)) axpy(sum, x, a.bracket(i, static_cast<std::size_t>(t)));
        for (const auto& [t, x] : a.bracket(k, i)) axpy(sum, x, a.bracket(j, static_cast<std::size_t>(t)));
        for (const auto& [t, x] : a.bracket(i, j)) axpy(sum, x, a.bracket(k, static_cast<std::size_t>(t)));
        if (!is_zero(sum)) {
          report.jacobi_ok = false;
          report.violations.push_back({GlaViolation::Kind::Jacobi, i, j, k});
        }
      }
  return report;
}

struct FundamentalReport {
  bool is_fgla = false;
  int kind = 0;
};

/// Whether a negatively graded algebra is generated by its degree -1 part.
inline FundamentalReport check_fundamental(const GradedAlgebra& a) {
  FundamentalReport out;
  for (int d : a.degrees())
    if (d >= 0) throw NonNegativeDegreePresent("check_fundamental: algebra has a basis element of degree >= 0");
  out.kind = a.dim() == 0 ? 0 : -a.min_degree();
  const auto minus1 = a.indices_of_degree(-1);
  if (minus1.empty()) return out;
  for (int p = -2; p >= -out.kind; --p) {
    const auto target = a.indices_of_degree(p);
    std::vector<Vector> images;
    for (auto x : minus1)
      for (auto y : a.indices_of_degree(p + 1)) images.push_back(to_dense(a.bracket(x, y), a.dim()));
    if (target.empty() || rank_of(images, a.dim()) != target.size()) return out;
  }
  out.is_fgla = true;
  return out;
}

/// Nondegenerate symmetric bilinear form on the degree -1 component.
class SymBilinearForm {
 public:
  SymBilinearForm() = default;
  SymBilinearForm(std::string algebra, std::vector<std::size_t> indices, RationalMatrix matrix)
      : algebra_(std::move(algebra)), indices_(std::move(indices)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != indices_.size() || matrix_.cols() != indices_.size())
      throw DimensionMismatch("form matrix size differs from the number of degree -1 indices");
    if (!matrix_.is_symmetric()) throw NotSymmetric("bilinear form is not symmetric");
    if (!is_invertible(matrix_)) throw DegenerateForm("bilinear form is degenerate");
  }

  /// Form on all degree -1 elements of `a`, in index order.
  static SymBilinearForm on(const GradedAlgebra& a, RationalMatrix matrix) {
    return SymBilinearForm(a.name(), a.indices_of_degree(-1), std::move(matrix));
  }

  const std::string& algebra() const { return algebra_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  const RationalMatrix& matrix() const { return matrix_; }
  std::size_t size() const { return indices_.size(); }

  SymBilinearForm scaled(const Rational& lambda) const {
    return SymBilinearForm(algebra_, indices_, matrix_ * lambda);
  }

  Signature signature() const { return signature_of_symmetric(matrix_); }

  friend bool operator==(const SymBilinearForm& a, const SymBilinearForm& b) {
    return a.algebra_ == b.algebra_ && a.indices_ == b.indices_ && a.matrix_ == b.matrix_;
  }

 private:
  std::string algebra_;
  std::vector<std::size_t> indices_;
  RationalMatrix matrix_;
};

}  // namespace glap
