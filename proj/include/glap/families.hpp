#pragma once

// Builders for the conformal pseudo-subriemannian families: the matrix
// families over C, C', H, H' and the (BI)_l family, the octonionic
// Heisenberg algebras, the G2 example from sl(2)-data and the
// non-semisimple counterexample built on sl(3, R).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glap/analysis.hpp"
#include "glap/composition.hpp"
#include "glap/family_spec.hpp"
#include "glap/graded_algebra.hpp"
#include "glap/linalg.hpp"
#include "glap/prolongation.hpp"

namespace glap {

/// Where the diagonal subspace for the rank bound lives.
enum class CartanSource { None, Ambient, ProlongationDegreeZero };

struct FamilyBuild {
  FamilySpec spec;
  GradedAlgebra m;
  SymBilinearForm g;
  std::optional<GradedAlgebra> ambient;
  int expected_kind = 0;
  CartanSource cartan_source = CartanSource::None;
  /// Tagged diagonal subspace in ambient coordinates (CartanSource::Ambient).
  std::vector<Vector> cartan_tag;
  /// Ambient degree-0 index -> conformal factor predicted by the construction.
  std::map<std::size_t, Rational> predicted_eta;
};

/// Matrices over a composition algebra (or R), flattened to real coordinates
/// ((i * n + j) * dim K + c), graded by block position.
class MatrixRealization {
 public:
  enum class Trace { Full, RealPart };

  MatrixRealization(CompositionAlgebra k, std::vector<std::size_t> block_sizes, std::optional<RationalMatrix> form,
                    Trace trace)
      : k_(std::move(k)), form_(std::move(form)) {
    for (std::size_t b = 0; b < block_sizes.size(); ++b)
      for (std::size_t i = 0; i < block_sizes[b]; ++i) block_.push_back(static_cast<int>(b));
    n_ = block_.size();
    kd_ = k_.dim();
    solve_basis(trace);
  }

  std::size_t n() const { return n_; }
  std::size_t kdim() const { return kd_; }
  const CompositionAlgebra& scalars() const { return k_; }
  std::size_t coord(std::size_t i, std::size_t j, std::size_t c) const { return (i * n_ + j) * kd_ + c; }
  int degree_of_entry(std::size_t i, std::size_t j) const { return block_[j] - block_[i]; }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<int>& degrees() const { return degrees_; }

  /// Entry (i, j) of a flattened matrix as an element of K.
  Vector entry(const Vector& x, std::size_t i, std::size_t j) const {
    return Vector(x.begin() + static_cast<std::ptrdiff_t>(coord(i, j, 0)),
                  x.begin() + static_cast<std::ptrdiff_t>(coord(i, j, 0) + kd_));
  }

  Vector product(const Vector& x, const Vector& y) const {
    Vector out = zero_vector(n_ * n_ * kd_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t l = 0; l < n_; ++l)
        for (std::size_t a = 0; a < kd_; ++a) {
          const Rational& xa = x[coord(i, l, a)];
          if (sgn(xa) == 0) continue;
          for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t b = 0; b < kd_; ++b) {
              const Rational& yb = y[coord(l, j, b)];
              if (sgn(yb) == 0) continue;
              for (const auto& [c, v] : k_.product(a, b)) out[coord(i, j, static_cast<std::size_t>(c))] += v * xa * yb;
            }
        }
    return out;
  }

  Vector commutator(const Vector& x, const Vector& y) const {
    Vector out = product(x, y);
    axpy(out, Rational(-1), product(y, x));
    return out;
  }

  /// Structure constants in the graded basis.
  GradedAlgebra algebra(const std::string& name) const {
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t i = 0; i < basis_.size(); ++i) by_degree[degrees_[i]].push_back(i);
    std::map<int, SpanCoordinates> coords;
    for (const auto& [d, idx] : by_degree) {
      std::vector<Vector> vs;
      for (auto i : idx) vs.push_back(basis_[i]);
      coords.emplace(d, SpanCoordinates(vs, n_ * n_ * kd_));
    }
    std::vector<BracketEntry> entries;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = i + 1; j < basis_.size(); ++j) {
        Vector w = commutator(basis_[i], basis_[j]);
        if (is_zero(w)) continue;
        auto it = coords.find(degrees_[i] + degrees_[j]);
        std::optional<Vector> c = it == coords.end() ? std::nullopt : it->second.coordinates(w);
        if (!c) throw std::logic_error("matrix realization is not closed under the bracket");
        SparseVector v;
        const auto& idx = by_degree.at(degrees_[i] + degrees_[j]);
        for (std::size_t t = 0; t < idx.size(); ++t)
          if (sgn((*c)[t]) != 0) v.emplace_back(static_cast<int>(idx[t]), (*c)[t]);
        entries.push_back({static_cast<int>(i), static_cast<int>(j), std::move(v)});
      }
    return GradedAlgebra(name, labels_, degrees_, entries);
  }

  /// Solutions supported on the diagonal entries with K-components in `comps`.
  std::vector<Vector> diagonal_subspace(const std::vector<std::size_t>& comps) const {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < n_; ++i)
      for (auto c : comps) cols.push_back(coord(i, i, c));
    return restricted_kernel(cols);
  }

  /// Coordinates of a flattened matrix in the graded basis.
  Vector coordinates_of(const Vector& x) const {
    SpanCoordinates sc(basis_, n_ * n_ * kd_);
    auto c = sc.coordinates(x);
    if (!c) throw std::invalid_argument("matrix is not in the realized algebra");
    return *c;
  }

 private:
  void solve_basis(Trace trace) {
    const std::size_t total = n_ * n_ * kd_;
    if (form_) {
      const auto& s = *form_;
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          for (std::size_t c = 0; c < kd_; ++c) {
            // (X* S + S X)_{ij}, component c
            Vector row = zero_vector(total);
            const Rational sigma = c == 0 ? 1 : -1;
            for (std::size_t k = 0; k < n_; ++k) {
              row[coord(k, i, c)] += sigma * s(k, j);
              row[coord(k, j, c)] += s(i, k);
            }
            if (!is_zero(row)) equations_.push_back(to_sparse(row));
          }
    }
    const std::size_t trace_comps = trace == Trace::Full ? kd_ : 1;
    for (std::size_t c = 0; c < trace_comps; ++c) {
      SparseVector row;
      for (std::size_t i = 0; i < n_; ++i) row.emplace_back(static_cast<int>(coord(i, i, c)), 1);
      equations_.push_back(row);
    }

    std::map<int, std::vector<std::size_t>> cols_by_degree;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t c = 0; c < kd_; ++c) cols_by_degree[degree_of_entry(i, j)].push_back(coord(i, j, c));
    std::vector<int> order;
    for (auto it = cols_by_degree.rbegin(); it != cols_by_degree.rend(); ++it)
      if (it->first < 0) order.push_back(it->first);
    for (const auto& [d, cols] : cols_by_degree)
      if (d >= 0) order.push_back(d);
    for (int d : order)
      for (auto& v : restricted_kernel(cols_by_degree[d])) {
        std::size_t last = 0;
        for (std::size_t t = 0; t < total; ++t)
          if (sgn(v[t]) != 0) last = t;
        labels_.push_back(label_of(last, d));
        basis_.push_back(std::move(v));
        degrees_.push_back(d);
      }
  }

  /// Kernel of the defining equations among matrices supported on `cols`.
  std::vector<Vector> restricted_kernel(const std::vector<std::size_t>& cols) const {
    const std::size_t total = n_ * n_ * kd_;
    std::vector<long> pos(total, -1);
    for (std::size_t i = 0; i < cols.size(); ++i) pos[cols[i]] = static_cast<long>(i);
    RowReducer red(cols.size());
    for (const auto& eq : equations_) {
      Vector row = zero_vector(cols.size());
      bool any = false;
      for (const auto& [t, v] : eq)
        if (pos[static_cast<std::size_t>(t)] >= 0) {
          row[static_cast<std::size_t>(pos[static_cast<std::size_t>(t)])] += v;
          any = true;
        }
      if (any) red.add_row(std::move(row));
    }
    std::vector<Vector> out;
    for (const auto& k : red.kernel_basis()) {
      Vector v = zero_vector(total);
      for (std::size_t i = 0; i < cols.size(); ++i) v[cols[i]] = k[i];
      out.push_back(std::move(v));
    }
    return out;
  }

  std::string label_of(std::size_t coordinate, int degree) const {
    const std::size_t c = coordinate % kd_;
    const std::size_t ij = coordinate / kd_;
    const std::size_t i = ij / n_ + 1, j = ij % n_ + 1;
    std::string s = "X" + std::to_string(i) + (n_ >= 10 ? "," : "") + std::to_string(j);
    if (kd_ > 1) s += "." + k_.unit_name(c);
    return s + "[" + std::to_string(degree) + "]";
  }

  CompositionAlgebra k_;
  std::optional<RationalMatrix> form_;
  std::vector<int> block_;
  std::size_t n_ = 0;
  std::size_t kd_ = 1;
  std::vector<SparseVector> equations_;
  std::vector<Vector> basis_;
  std::vector<int> degrees_;
  std::vector<std::string> labels_;
};

namespace detail {

/// S_{p,q}: anti-diagonal K_p blocks around 1_q.
inline RationalMatrix s_matrix(int p, int q) {
  const auto n = static_cast<std::size_t>(2 * p + q);
  RationalMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < static_cast<std::size_t>(p) || i >= static_cast<std::size_t>(p + q))
      s(i, n - 1 - i) = 1;
    else
      s(i, i) = 1;
  }
  return s;
}

/// Form on the degree -1 indices of an algebra, computed from a bilinear function on indices.
template <class F>
SymBilinearForm form_from(const GradedAlgebra& m, F&& value) {
  const auto idx = m.indices_of_degree(-1);
  RationalMatrix g(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) g(a, b) = value(idx[a], idx[b]);
  return SymBilinearForm::on(m, std::move(g));
}

inline GradedAlgebra negative_part_named(const GradedAlgebra& a, const std::string& name) {
  return a.restricted(a.negative_indices(), name);
}

/// Conformal factor predicted for ambient degree-0 elements: factor * Re(A_11).
inline std::map<std::size_t, Rational> predicted_eta(const GradedAlgebra& ambient, const MatrixRealization& r,
                                                     const Rational& factor) {
  std::map<std::size_t, Rational> out;
  for (auto i : ambient.indices_of_degree(0)) out[i] = factor * r.basis()[i][r.coord(0, 0, 0)];
  return out;
}

inline std::vector<Vector> to_ambient(const MatrixRealization& r, const std::vector<Vector>& mats) {
  std::vector<Vector> out;
  for (const auto& x : mats) out.push_back(r.coordinates_of(x));
  return out;
}

}  // namespace detail

/// (HK)_{p,q}: sl(n, K) intersected with {X : X* S + S X = 0}, n = 2p + q.
/// The trace condition is tr X = 0 for commutative K and Re tr X = 0 otherwise.
inline FamilyBuild build_hk(const std::string& k_tag, int p, int q) {
  FamilyTag tag;
  if (k_tag == "C") tag = FamilyTag::HC;
  else if (k_tag == "C'") tag = FamilyTag::HCsplit;
  else if (k_tag == "H") tag = FamilyTag::HH;
  else if (k_tag == "H'") tag = FamilyTag::HHsplit;
  else throw BadParameters("matrix family requires K in {C, C', H, H'} (got '" + k_tag + "')");
  FamilySpec spec = FamilySpec::hk(tag, p, q);
  spec.validate();

  auto k = CompositionAlgebra::from_tag(k_tag);
  const auto n = static_cast<std::size_t>(2 * p + q);
  const auto trace = k.commutative() ? MatrixRealization::Trace::Full : MatrixRealization::Trace::RealPart;
  MatrixRealization r(k, {1, n - 2, 1}, detail::s_matrix(p, q), trace);
  const std::string name = spec.label();

  FamilyBuild out{spec, {}, {}, r.algebra(name), 2, CartanSource::None, {}, {}};
  out.m = detail::negative_part_named(*out.ambient, name + "-");
  // g(X, Y) = Re(X21* S_{p-1,q} Y21)
  const RationalMatrix s_mid = detail::s_matrix(p - 1, q);
  out.g = detail::form_from(out.m, [&](std::size_t a, std::size_t b) -> Rational {
    Rational v = 0;
    for (std::size_t i = 0; i + 2 < n; ++i)
      for (std::size_t j = 0; j + 2 < n; ++j) {
        if (sgn(s_mid(i, j)) == 0) continue;
        auto x = r.entry(r.basis()[a], i + 1, 0), y = r.entry(r.basis()[b], j + 1, 0);
        v += s_mid(i, j) * k.multiply(k.conjugate(x), y)[0];
      }
    return v;
  });
  out.predicted_eta = detail::predicted_eta(*out.ambient, r, -2);
  if (tag == FamilyTag::HCsplit || tag == FamilyTag::HHsplit) {
    out.cartan_source = CartanSource::Ambient;
    out.cartan_tag = detail::to_ambient(r, r.diagonal_subspace({0, k.dim() / 2}));
  }
  return out;
}

/// (BI)_l: so(l+1, l) = {X : tX S + S X = 0}, S = S_{l,1}, with the five-block grading.
inline FamilyBuild build_bi(int l) {
  FamilySpec spec = FamilySpec::bi(l);
  spec.validate();
  const auto b = static_cast<std::size_t>(l - 1);
  MatrixRealization r(CompositionAlgebra({}), {1, b, 1, b, 1}, detail::s_matrix(l, 1), MatrixRealization::Trace::Full);
  const std::string name = spec.label();
  FamilyBuild out{spec, {}, {}, r.algebra(name), 3, CartanSource::Ambient, {}, {}};
  out.m = detail::negative_part_named(*out.ambient, name + "-");
  // g(X, Y) = -1/2 (X32 Y21 + Y32 X21); block 3 is row l, block 2 rows 1..l-1
  const auto mid = static_cast<std::size_t>(l);
  out.g = detail::form_from(out.m, [&](std::size_t x, std::size_t y) -> Rational {
    const auto& X = r.basis()[x];
    const auto& Y = r.basis()[y];
    Rational v = 0;
    for (std::size_t a = 1; a <= b; ++a) {
      v += X[r.coord(mid, a, 0)] * Y[r.coord(a, 0, 0)];
      v += Y[r.coord(mid, a, 0)] * X[r.coord(a, 0, 0)];
    }
    return Rational(-v / 2);
  });
  out.predicted_eta = detail::predicted_eta(*out.ambient, r, -1);
  out.cartan_tag = detail::to_ambient(r, r.diagonal_subspace({0}));
  return out;
}

/// g_{-1} = K, g_{-2} = Im K, [x, y] = conj(x) y - conj(y) x, g = Re(conj(x) y).
inline FamilyBuild build_octonionic(bool split) {
  const FamilySpec spec = FamilySpec::simple(split ? FamilyTag::HOsplit : FamilyTag::HO);
  auto k = CompositionAlgebra::from_tag(split ? "O'" : "O");
  const std::size_t d = k.dim();
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (std::size_t c = 0; c < d; ++c) {
    labels.push_back("x." + k.unit_name(c) + "[-1]");
    degrees.push_back(-1);
  }
  for (std::size_t c = 1; c < d; ++c) {
    labels.push_back("y." + k.unit_name(c) + "[-2]");
    degrees.push_back(-2);
  }
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      auto x = unit_vector(d, a), y = unit_vector(d, b);
      Vector w = k.multiply(k.conjugate(x), y);
      axpy(w, Rational(-1), k.multiply(k.conjugate(y), x));
      if (sgn(w[0]) != 0) throw std::logic_error("octonionic bracket left the imaginary part");
      SparseVector v;
      for (std::size_t c = 1; c < d; ++c)
        if (sgn(w[c]) != 0) v.emplace_back(static_cast<int>(d + c - 1), w[c]);
      if (!v.empty()) entries.push_back({static_cast<int>(a), static_cast<int>(b), std::move(v)});
    }
  FamilyBuild out;
  out.spec = spec;
  out.m = GradedAlgebra(spec.label() + "-", labels, degrees, entries);
  out.g = SymBilinearForm::on(out.m, k.norm_form());
  out.expected_kind = 2;
  return out;
}

/// Invariant symplectic form on S^3(R^2) in the monomial basis e1^{3-k} e2^k,
/// normalized by omega(e1^3, e2^3) = 1.
inline RationalMatrix sl2_invariant_symplectic_form() {
  const std::size_t n = 4;
  // e21: e1 -> e2; e12: e2 -> e1; h: e1 -> e1, e2 -> -e2 (derivation extension)
  RationalMatrix e21(n, n), e12(n, n), h(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const long a = static_cast<long>(3 - k), b = static_cast<long>(k);
    if (k + 1 < n) e21(k + 1, k) = a;
    if (k > 0) e12(k - 1, k) = b;
    h(k, k) = a - b;
  }
  // unknowns omega(i, j), i < j
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  auto unknown = [&](std::size_t i, std::size_t j) -> std::pair<std::size_t, Rational> {
    for (std::size_t t = 0; t < pairs.size(); ++t) {
      if (pairs[t] == std::make_pair(i, j)) return {t, 1};
      if (pairs[t] == std::make_pair(j, i)) return {t, -1};
    }
    return {SIZE_MAX, 0};
  };
  RowReducer red(pairs.size());
  for (const auto* x : {&e21, &e12, &h})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // omega(X m_i, m_j) + omega(m_i, X m_j) = 0
        Vector row = zero_vector(pairs.size());
        for (std::size_t t = 0; t < n; ++t) {
          if (sgn((*x)(t, i)) != 0 && t != j) {
            auto [u, sg] = unknown(t, j);
            row[u] += sg * (*x)(t, i);
          }
          if (sgn((*x)(t, j)) != 0 && t != i) {
            auto [u, sg] = unknown(i, t);
            row[u] += sg * (*x)(t, j);
          }
        }
        red.add_row(std::move(row));
      }
  auto ker = red.kernel_basis();
  if (ker.size() != 1) throw std::logic_error("sl(2)-invariant form on S^3 is not unique");
  const Rational norm = ker[0][unknown(0, 3).first];
  RationalMatrix omega(n, n);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    omega(pairs[t].first, pairs[t].second) = ker[0][t] / norm;
    omega(pairs[t].second, pairs[t].first) = -ker[0][t] / norm;
  }
  return omega;
}

/// The G2 example: g_{-1} = R E21 + R e1^3, g_{-k} = R e1^{4-k} e2^{k-1} (k = 2, 3, 4), g_{-5} = R z.
inline FamilyBuild build_g2_example() {
  const FamilySpec spec = FamilySpec::simple(FamilyTag::G);
  const auto omega = sl2_invariant_symplectic_form();
  // indices: 0 = E21, 1..4 = e1^3, e1^2 e2, e1 e2^2, e2^3, 5 = z
  std::vector<std::string> labels{"E21[-1]", "e1^3[-1]", "e1^2e2[-2]", "e1e2^2[-3]", "e2^3[-4]", "z[-5]"};
  std::vector<int> degrees{-1, -1, -2, -3, -4, -5};
  std::vector<BracketEntry> entries;
  for (int k = 0; k < 3; ++k) entries.push_back({0, 1 + k, {{2 + k, Rational(3 - k)}}});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (i + j == 3 && sgn(omega(i, j)) != 0)
        entries.push_back({static_cast<int>(1 + i), static_cast<int>(1 + j), {{5, omega(i, j)}}});
  FamilyBuild out;
  out.spec = spec;
  out.m = GradedAlgebra(spec.label() + "-", labels, degrees, entries);
  // g(X, u) = (X u | e1^2 e2) with orthonormal monomials: g(E21, e1^3) = 3
  out.g = SymBilinearForm::on(out.m, RationalMatrix{{0, 3}, {3, 0}});
  out.expected_kind = 5;
  out.cartan_source = CartanSource::ProlongationDegreeZero;
  return out;
}

/// Semidirect product of l_{-1} with the regraded adjoint module of l = sl(3, R)
/// (grading by the first simple root).
inline FamilyBuild build_counterexample() {
  const FamilySpec spec = FamilySpec::simple(FamilyTag::Counterexample);
  MatrixRealization r(CompositionAlgebra({}), {1, 2}, std::nullopt, MatrixRealization::Trace::Full);
  const GradedAlgebra l = r.algebra("sl3");
  const RationalMatrix killing = killing_form(l);
  const auto lm1 = l.indices_of_degree(-1), l0 = l.indices_of_degree(0), l1 = l.indices_of_degree(1);

  // t: l_{-1} (0, 1), S_{-1} = l_1 (2, 3), S_{-2} = l_0 (4..7), S_{-3} = l_{-1} (8, 9)
  std::vector<std::size_t> module_index(l.dim());
  std::vector<std::string> labels;
  std::vector<int> degrees;
  for (auto i : lm1) {
    labels.push_back("L" + l.labels()[i]);
    degrees.push_back(-1);
  }
  std::size_t next = lm1.size();
  for (const auto* part : {&l1, &l0, &lm1})
    for (auto i : *part) {
      module_index[i] = next++;
      labels.push_back("S" + l.labels()[i].substr(0, l.labels()[i].find('[')) + "[" +
                       std::to_string(l.degree(i) - 2) + "]");
      degrees.push_back(l.degree(i) - 2);
    }
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < lm1.size(); ++a) {
    for (std::size_t b = a + 1; b < lm1.size(); ++b)
      if (!l.bracket(lm1[a], lm1[b]).empty()) throw std::logic_error("l_{-1} is expected to be abelian");
    for (std::size_t s = 0; s < l.dim(); ++s) {
      SparseVector v;
      for (const auto& [k, c] : l.bracket(lm1[a], s)) v.emplace_back(static_cast<int>(module_index[static_cast<std::size_t>(k)]), c);
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      if (!v.empty()) entries.push_back({static_cast<int>(a), static_cast<int>(module_index[s]), std::move(v)});
    }
  }
  FamilyBuild out;
  out.spec = spec;
  out.m = GradedAlgebra(spec.label() + "-", labels, degrees, entries);
  // zero on each summand; cross pairing by the Killing form l_{-1} x l_1
  RationalMatrix g(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) g(a, 2 + b) = g(2 + b, a) = killing(lm1[a], l1[b]);
  out.g = SymBilinearForm::on(out.m, std::move(g));
  out.expected_kind = 3;
  return out;
}

inline FamilyBuild build_family(const FamilySpec& spec) {
  spec.validate();
  switch (spec.tag) {
    case FamilyTag::HC: return build_hk("C", spec.p, spec.q);
    case FamilyTag::HCsplit: return build_hk("C'", spec.p, spec.q);
    case FamilyTag::HH: return build_hk("H", spec.p, spec.q);
    case FamilyTag::HHsplit: return build_hk("H'", spec.p, spec.q);
    case FamilyTag::HO: return build_octonionic(false);
    case FamilyTag::HOsplit: return build_octonionic(true);
    case FamilyTag::BI: return build_bi(spec.l);
    case FamilyTag::G: return build_g2_example();
    case FamilyTag::Counterexample: return build_counterexample();
  }
  throw BadParameters("unknown family");
}

/// D restricted to m for each ambient degree-0 element, compared with the predicted factor.
inline bool conformal_covariance_holds(const FamilyBuild& b) {
  if (!b.ambient) return true;
  const std::size_t n = b.m.dim();
  for (const auto& [i, eta] : b.predicted_eta) {
    auto ad = b.ambient->ad_matrix(i);
    RationalMatrix d(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) d(r, c) = ad(r, c);
    auto f = conformal_factor(d, b.g);
    if (!f || *f != eta) return false;
  }
  return true;
}

/// The tagged diagonal subspace and the algebra it lives in.
inline std::optional<std::pair<GradedAlgebra, std::vector<Vector>>> cartan_tag_of(
    const FamilyBuild& b, const std::optional<ProlongationResult>& prolongation = std::nullopt) {
  switch (b.cartan_source) {
    case CartanSource::None:
      return std::nullopt;
    case CartanSource::Ambient:
      return std::make_pair(*b.ambient, b.cartan_tag);
    case CartanSource::ProlongationDegreeZero: {
      ProlongationResult p = prolongation ? *prolongation : full_prolongation(b.m, b.g);
      std::vector<Vector> tag;
      for (auto i : p.full.indices_of_degree(0)) tag.push_back(unit_vector(p.full.dim(), i));
      return std::make_pair(p.full, tag);
    }
  }
  return std::nullopt;
}

}  // namespace glap
