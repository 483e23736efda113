#pragma once

// Composition algebras C, C', H, H', O, O' over Q by Cayley-Dickson doubling.

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "glap/matrix.hpp"
#include "glap/rational.hpp"

namespace glap {

class DimTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline Vector cd_conjugate(const Vector& x) {
  if (x.size() == 1) return x;
  const std::size_t h = x.size() / 2;
  Vector a(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(h));
  Vector out = cd_conjugate(a);
  for (std::size_t i = h; i < x.size(); ++i) out.push_back(-x[i]);
  return out;
}

// (a,b)(c,d) = (ac + gamma * conj(d) b, d a + b conj(c))
inline Vector cd_multiply(const Vector& x, const Vector& y, std::span<const int> gammas) {
  if (gammas.empty()) return Vector{x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const auto half = [h](const Vector& v, std::size_t k) {
    return Vector(v.begin() + static_cast<std::ptrdiff_t>(k * h),
                  v.begin() + static_cast<std::ptrdiff_t>((k + 1) * h));
  };
  const Vector a = half(x, 0), b = half(x, 1), c = half(y, 0), d = half(y, 1);
  const auto base = gammas.first(gammas.size() - 1);
  const Rational gamma(gammas.back());
  Vector first = cd_multiply(a, c, base);
  axpy(first, gamma, cd_multiply(cd_conjugate(d), b, base));
  Vector second = cd_multiply(d, a, base);
  axpy(second, Rational(1), cd_multiply(b, cd_conjugate(c), base));
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

}  // namespace detail

class CompositionAlgebra {
 public:
  /// ℝ doubled once per entry of `gamma_chain`.
  explicit CompositionAlgebra(std::vector<int> gamma_chain) : gammas_(std::move(gamma_chain)) {
    if (gammas_.size() > 3) throw DimTooLarge("Cayley-Dickson doubling beyond dimension 8");
    for (int g : gammas_)
      if (g != 1 && g != -1) throw std::invalid_argument("doubling parameter must be +1 or -1");
    dim_ = std::size_t{1} << gammas_.size();
    table_.resize(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        table_[i * dim_ + j] = to_sparse(
            detail::cd_multiply(unit_vector(dim_, i), unit_vector(dim_, j), gammas_));
    conj_ = RationalMatrix(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) conj_(i, i) = i == 0 ? 1 : -1;
  }

  /// Doubles this algebra with parameter `gamma`.
  CompositionAlgebra doubled(int gamma) const {
    if (dim_ == 8) throw DimTooLarge("cannot double an 8-dimensional algebra");
    auto chain = gammas_;
    chain.push_back(gamma);
    return CompositionAlgebra(std::move(chain));
  }

  /// "C", "C'", "H", "H'", "O" or "O'".
  static CompositionAlgebra from_tag(const std::string& tag) {
    if (tag == "C") return CompositionAlgebra({-1});
    if (tag == "C'") return CompositionAlgebra({1});
    if (tag == "H") return CompositionAlgebra({-1, -1});
    if (tag == "H'") return CompositionAlgebra({-1, 1});
    if (tag == "O") return CompositionAlgebra({-1, -1, -1});
    if (tag == "O'") return CompositionAlgebra({-1, -1, 1});
    throw std::invalid_argument("unknown composition algebra tag '" + tag + "'");
  }

  std::size_t dim() const { return dim_; }
  const std::vector<int>& gamma_chain() const { return gammas_; }
  bool commutative() const { return dim_ <= 2; }
  bool associative() const { return dim_ <= 4; }

  /// e_i e_j as a sparse coefficient vector.
  const SparseVector& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  const RationalMatrix& conj_matrix() const { return conj_; }

  Vector multiply(const Vector& x, const Vector& y) const {
    check(x);
    check(y);
    Vector out = zero_vector(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (sgn(y[j]) == 0) continue;
        axpy(out, x[i] * y[j], product(i, j));
      }
    }
    return out;
  }

  Vector conjugate(Vector x) const {
    check(x);
    for (std::size_t i = 1; i < dim_; ++i) x[i] = -x[i];
    return x;
  }

  Rational re(const Vector& x) const {
    check(x);
    return x[0];
  }

  Vector im(Vector x) const {
    check(x);
    x[0] = 0;
    return x;
  }

  /// N(x), defined by x conj(x) = N(x) 1.
  Rational norm(const Vector& x) const { return multiply(x, conjugate(x))[0]; }

  /// g(x,y) = (conj(x) y + conj(y) x) / 2, which is real.
  Rational inner(const Vector& x, const Vector& y) const {
    Vector s = multiply(conjugate(x), y);
    axpy(s, Rational(1), multiply(conjugate(y), x));
    return s[0] / 2;
  }

  /// Gram matrix of g in the doubling basis; diagonal with entries ±1.
  RationalMatrix norm_form() const {
    RationalMatrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(i, j) = inner(unit_vector(dim_, i), unit_vector(dim_, j));
    return m;
  }

  std::string unit_name(std::size_t i) const {
    static const char* quaternion[] = {"1", "i", "j", "k"};
    if (dim_ <= 4) return dim_ == 2 ? (i == 0 ? "1" : "i") : quaternion[i];
    return "e" + std::to_string(i);
  }

 private:
  void check(const Vector& x) const {
    if (x.size() != dim_) throw DimensionMismatch("element has wrong dimension for this algebra");
  }

  std::vector<int> gammas_;
  std::size_t dim_ = 1;
  std::vector<SparseVector> table_;
  RationalMatrix conj_;
};

/// Doubles `base` (dimension 1, 2 or 4; ℝ is `CompositionAlgebra({})`).
inline CompositionAlgebra cayley_dickson(const CompositionAlgebra& base, int gamma) {
  return base.doubled(gamma);
}

/// An element bound to its algebra; binary operations require the same algebra.
class CAElement {
 public:
  CAElement(std::shared_ptr<const CompositionAlgebra> algebra, Vector coords)
      : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (coords_.size() != algebra_->dim()) throw DimensionMismatch("coordinate count differs from algebra dim");
  }

  const CompositionAlgebra& algebra() const { return *algebra_; }
  const Vector& coords() const { return coords_; }

  CAElement conjugate() const { return {algebra_, algebra_->conjugate(coords_)}; }
  Rational re() const { return algebra_->re(coords_); }
  CAElement im() const { return {algebra_, algebra_->im(coords_)}; }
  Rational norm() const { return algebra_->norm(coords_); }

  friend CAElement operator*(const CAElement& x, const CAElement& y) {
    x.same(y);
    return {x.algebra_, x.algebra_->multiply(x.coords_, y.coords_)};
  }
  friend CAElement operator+(const CAElement& x, const CAElement& y) {
    x.same(y);
    Vector s = x.coords_;
    axpy(s, Rational(1), y.coords_);
    return {x.algebra_, s};
  }
  friend CAElement operator-(const CAElement& x, const CAElement& y) {
    x.same(y);
    Vector s = x.coords_;
    axpy(s, Rational(-1), y.coords_);
    return {x.algebra_, s};
  }
  friend bool operator==(const CAElement& x, const CAElement& y) {
    return x.algebra_ == y.algebra_ && x.coords_ == y.coords_;
  }

 private:
  void same(const CAElement& o) const {
    if (algebra_ != o.algebra_) throw AlgebraMismatch("elements belong to different algebras");
  }

  std::shared_ptr<const CompositionAlgebra> algebra_;
  Vector coords_;
};

}  // namespace glap
