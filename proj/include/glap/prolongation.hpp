#pragma once

// Conformal derivation algebra g_0 of (m, [g]) and the Tanaka prolongation
// g = m + g_0 + g_1 + ... as an explicit graded Lie algebra.
//
// Elements of nonnegative degree k are stored as their action on m: a map
// u with u(g_p) in g_{p+k} for every p < 0. Transitivity makes this action
// faithful, so brackets among nonnegative elements are recovered from
// ([u, v])(x) = [u, [v, x]] - [v, [u, x]].

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glap/graded_algebra.hpp"
#include "glap/linalg.hpp"
#include "glap/rational.hpp"

namespace glap {

class NotFundamental : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EtaVanishesOnE : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class StepLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultStepLimit = 64;

/// Cap on prolongation steps; GLAP_STEP_LIMIT overrides the default.
inline int default_step_limit() {
  if (const char* env = std::getenv("GLAP_STEP_LIMIT")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultStepLimit;
}

/// g(Dx, y) + g(x, Dy) = eta * g(x, y) for all x, y in g_{-1}, if such an
/// eta exists. `d` acts on all of m (dim m x dim m).
inline std::optional<Rational> conformal_factor(const RationalMatrix& d, const SymBilinearForm& g) {
  const auto& idx = g.indices();
  const auto& G = g.matrix();
  const std::size_t n = idx.size();
  auto term = [&](std::size_t a, std::size_t b) {
    Rational s = 0;
    for (std::size_t c = 0; c < n; ++c) {
      s += d(idx[c], idx[a]) * G(c, b);
      s += d(idx[c], idx[b]) * G(a, c);
    }
    return s;
  };
  std::optional<Rational> eta;
  for (std::size_t a = 0; a < n && !eta; ++a)
    for (std::size_t b = 0; b < n && !eta; ++b)
      if (sgn(G(a, b)) != 0) eta = term(a, b) / G(a, b);
  if (!eta) return std::nullopt;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      if (term(a, b) != *eta * G(a, b)) return std::nullopt;
  return eta;
}

/// Degree-preserving derivations of m that are conformal on g_{-1}.
struct DerivationBasis {
  GradedAlgebra m;
  /// Each element acts on m as a dim m x dim m block-diagonal matrix.
  std::vector<RationalMatrix> elements;
  /// eta_D for each element.
  std::vector<Rational> eta;

  std::size_t size() const { return elements.size(); }

  /// The characteristic map E = p * id on g_p.
  RationalMatrix characteristic() const {
    RationalMatrix e(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) e(i, i) = m.degree(i);
    return e;
  }

  std::vector<Vector> flattened() const {
    std::vector<Vector> out;
    for (const auto& d : elements) {
      Vector v;
      v.reserve(m.dim() * m.dim());
      for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) v.push_back(d(r, c));
      out.push_back(std::move(v));
    }
    return out;
  }
};

inline Vector flatten(const RationalMatrix& d) {
  Vector v;
  v.reserve(d.rows() * d.cols());
  for (std::size_t r = 0; r < d.rows(); ++r)
    for (std::size_t c = 0; c < d.cols(); ++c) v.push_back(d(r, c));
  return v;
}

namespace detail {

inline void check_form_matches(const GradedAlgebra& m, const SymBilinearForm& g) {
  if (g.indices() != m.indices_of_degree(-1))
    throw DimensionMismatch("form indices do not match the degree -1 basis of the algebra");
}

/// Sparse linear row accumulated per output coordinate.
using RowMap = std::map<std::size_t, std::map<std::size_t, Rational>>;

inline void add_rows(RowReducer& red, const RowMap& rows) {
  for (const auto& [t, coeffs] : rows) {
    Vector row = zero_vector(red.cols());
    bool any = false;
    for (const auto& [u, x] : coeffs)
      if (sgn(x) != 0) {
        row[u] = x;
        any = true;
      }
    if (any) red.add_row(std::move(row));
  }
}

}  // namespace detail

/// The algebra g_0 of (m, [g]) as one exact kernel: the derivation identity
/// on all basis pairs of m together with the conformal condition on g_{-1},
/// with eta as an extra unknown.
inline DerivationBasis conformal_g0(const GradedAlgebra& m, const SymBilinearForm& g) {
  if (!check_fundamental(m).is_fgla) throw NotFundamental("conformal_g0: m is not fundamental");
  detail::check_form_matches(m, g);
  const std::size_t n = m.dim();

  // Unknown D(b, x): coefficient of e_b in D(e_x), for deg b = deg x.
  std::vector<std::vector<std::size_t>> unknown(n, std::vector<std::size_t>(n, SIZE_MAX));
  std::size_t count = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t b = 0; b < n; ++b)
      if (m.degree(b) == m.degree(x)) unknown[b][x] = count++;
  const std::size_t eta_col = count++;

  RowReducer red(count);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      detail::RowMap rows;
      for (const auto& [z, c] : m.bracket(x, y))
        for (std::size_t b = 0; b < n; ++b)
          if (unknown[b][static_cast<std::size_t>(z)] != SIZE_MAX)
            rows[b][unknown[b][static_cast<std::size_t>(z)]] += c;
      for (std::size_t b = 0; b < n; ++b) {
        if (unknown[b][x] != SIZE_MAX)
          for (const auto& [t, v] : m.bracket(b, y)) rows[static_cast<std::size_t>(t)][unknown[b][x]] -= v;
        if (unknown[b][y] != SIZE_MAX)
          for (const auto& [t, v] : m.bracket(x, b)) rows[static_cast<std::size_t>(t)][unknown[b][y]] -= v;
      }
      detail::add_rows(red, rows);
    }
  const auto& idx = g.indices();
  const auto& G = g.matrix();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b) {
      Vector row = zero_vector(count);
      for (std::size_t c = 0; c < idx.size(); ++c) {
        row[unknown[idx[c]][idx[a]]] += G(c, b);
        row[unknown[idx[c]][idx[b]]] += G(a, c);
      }
      row[eta_col] -= G(a, b);
      red.add_row(std::move(row));
    }

  DerivationBasis out{m, {}, {}};
  for (const auto& v : red.kernel_basis()) {
    RationalMatrix d(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t b = 0; b < n; ++b)
        if (unknown[b][x] != SIZE_MAX) d(b, x) = v[unknown[b][x]];
    out.elements.push_back(std::move(d));
    out.eta.push_back(v[eta_col]);
  }
  return out;
}

/// g_0 = RE + ker(eta).
struct CharacteristicSplit {
  RationalMatrix characteristic;
  Rational eta_of_characteristic;
  /// Basis of ker(eta) inside g_0.
  std::vector<RationalMatrix> hat_g0;
  /// characteristic followed by hat_g0.
  std::vector<RationalMatrix> adapted_basis() const {
    std::vector<RationalMatrix> out{characteristic};
    out.insert(out.end(), hat_g0.begin(), hat_g0.end());
    return out;
  }
};

inline CharacteristicSplit characteristic_split(const DerivationBasis& d) {
  const std::size_t n = d.m.dim();
  CharacteristicSplit out{d.characteristic(), 0, {}};
  SpanCoordinates coords(d.flattened(), n * n);
  auto e_coords = coords.coordinates(flatten(out.characteristic));
  if (!e_coords) throw std::logic_error("characteristic_split: characteristic map is not a conformal derivation");
  out.eta_of_characteristic = dot(*e_coords, d.eta);
  if (sgn(out.eta_of_characteristic) == 0) throw EtaVanishesOnE("eta vanishes on the characteristic element");
  RationalMatrix eta_row(1, d.size());
  for (std::size_t i = 0; i < d.size(); ++i) eta_row(0, i) = d.eta[i];
  for (const auto& c : kernel_basis(eta_row)) {
    RationalMatrix h(n, n);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (sgn(c[i]) != 0) h += d.elements[i] * c[i];
    out.hat_g0.push_back(std::move(h));
  }
  return out;
}

struct ProlongationResult {
  GradedAlgebra full;
  /// Largest degree with a nonzero component.
  int boundary = 0;
  std::map<int, std::size_t> step_dims;
  SymBilinearForm form;
  /// Number of leading basis elements forming m.
  std::size_t negative_dim = 0;
};

/// Step-by-step Tanaka prolongation of (m, g_0).
class Prolongator {
 public:
  /// One element of nonnegative degree: image of each basis vector of m,
  /// in global coordinates of the algebra being built.
  using Map = std::vector<SparseVector>;

  Prolongator(GradedAlgebra m, SymBilinearForm g) : m_(std::move(m)), g_(std::move(g)) {
    auto split = characteristic_split(conformal_g0(m_, g_));
    std::vector<Map> level0;
    for (const auto& d : split.adapted_basis()) {
      Map u(m_.dim());
      for (std::size_t x = 0; x < m_.dim(); ++x)
        for (std::size_t b = 0; b < m_.dim(); ++b)
          if (sgn(d(b, x)) != 0) u[x].emplace_back(static_cast<int>(b), d(b, x));
      level0.push_back(std::move(u));
    }
    push_level(std::move(level0));
  }

  const GradedAlgebra& m() const { return m_; }
  const SymBilinearForm& form() const { return g_; }
  /// Highest degree computed so far.
  int top_degree() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t total_dim() const { return offsets_.back(); }
  const std::vector<Map>& level(int k) const { return levels_[static_cast<std::size_t>(k)]; }

  /// Computes g_{k+1} from the algebra through degree k. Returns false (and
  /// adds nothing) when g_{k+1} = 0.
  bool step() {
    const int d = top_degree() + 1;
    const std::size_t n = m_.dim();
    std::vector<std::vector<std::size_t>> targets(n);
    std::vector<std::size_t> first_unknown(n + 1, 0);
    for (std::size_t x = 0; x < n; ++x) {
      targets[x] = global_indices_of_degree(m_.degree(x) + d);
      first_unknown[x + 1] = first_unknown[x] + targets[x].size();
    }
    const std::size_t count = first_unknown[n];
    if (count == 0) return false;
    std::vector<std::map<std::size_t, std::size_t>> position(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < targets[x].size(); ++i) position[x][targets[x][i]] = first_unknown[x] + i;

    // u([x,y]) - [u(x), y] - [x, u(y)] = 0 for all basis pairs of m.
    RowReducer red(count);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        detail::RowMap rows;
        for (const auto& [z, c] : m_.bracket(x, y)) {
          auto zz = static_cast<std::size_t>(z);
          for (std::size_t i = 0; i < targets[zz].size(); ++i) rows[targets[zz][i]][first_unknown[zz] + i] += c;
        }
        for (std::size_t i = 0; i < targets[x].size(); ++i)
          for (const auto& [t, v] : bracket_with_negative(targets[x][i], y))
            rows[static_cast<std::size_t>(t)][first_unknown[x] + i] -= v;
        for (std::size_t i = 0; i < targets[y].size(); ++i)
          for (const auto& [t, v] : bracket_with_negative(targets[y][i], x))
            rows[static_cast<std::size_t>(t)][first_unknown[y] + i] += v;
        detail::add_rows(red, rows);
      }
    auto kernel = red.kernel_basis();
    if (kernel.empty()) return false;
    std::vector<Map> level;
    for (const auto& v : kernel) {
      Map u(n);
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < targets[x].size(); ++i)
          if (sgn(v[first_unknown[x] + i]) != 0)
            u[x].emplace_back(static_cast<int>(targets[x][i]), v[first_unknown[x] + i]);
      level.push_back(std::move(u));
    }
    push_level(std::move(level));
    return true;
  }

  /// Assembles the full bracket table. Nonnegative brackets are computed in
  /// order of total degree so every recursive term is already known.
  GradedAlgebra assemble(const std::string& name) const {
    const std::size_t n = m_.dim();
    const std::size_t total = total_dim();
    std::vector<std::string> labels = m_.labels();
    std::vector<int> degrees = m_.degrees();
    for (std::size_t k = 0; k < levels_.size(); ++k)
      for (std::size_t i = 0; i < levels_[k].size(); ++i) {
        std::string base = k == 0 ? (i == 0 ? std::string("E") : "A" + std::to_string(i))
                                  : "U" + std::to_string(k) + "_" + std::to_string(i + 1);
        labels.push_back(base + "[" + std::to_string(k) + "]");
        degrees.push_back(static_cast<int>(k));
      }

    std::map<std::pair<std::size_t, std::size_t>, SparseVector> nonneg;
    auto nonneg_bracket = [&](std::size_t a, std::size_t b) -> SparseVector {
      if (a == b) return {};
      auto it = nonneg.find({a, b});
      if (it == nonneg.end()) throw std::logic_error("prolongation: bracket requested before it was computed");
      return it->second;
    };
    // [e_a, v] for nonnegative a and a sparse v in global coordinates.
    auto apply = [&](std::size_t a, const SparseVector& v) {
      Vector out = zero_vector(total);
      for (const auto& [t, c] : v) {
        auto tt = static_cast<std::size_t>(t);
        axpy(out, c, tt < n ? map_of(a)[tt] : nonneg_bracket(a, tt));
      }
      return out;
    };

    std::vector<SpanCoordinates> level_coords;
    for (int k = 0; k <= top_degree(); ++k) {
      std::vector<Vector> flat;
      for (const auto& u : levels_[static_cast<std::size_t>(k)]) flat.push_back(flatten_map(u, k));
      level_coords.emplace_back(flat, flat_size(k));
    }

    const int top = top_degree();
    for (int s = 0; s <= 2 * top; ++s)
      for (int a = 0; a <= top && a <= s; ++a) {
        const int b = s - a;
        if (b < a || b > top) continue;
        for (std::size_t u = offsets_[static_cast<std::size_t>(a)]; u < offsets_[static_cast<std::size_t>(a) + 1]; ++u)
          for (std::size_t v = offsets_[static_cast<std::size_t>(b)]; v < offsets_[static_cast<std::size_t>(b) + 1]; ++v) {
            if (a == b && v <= u) continue;
            Map w(n);
            for (std::size_t x = 0; x < n; ++x) {
              Vector img = apply(u, map_of(v)[x]);
              axpy(img, Rational(-1), to_sparse(apply(v, map_of(u)[x])));
              w[x] = to_sparse(img);
            }
            SparseVector result;
            if (s > top) {
              for (const auto& img : w)
                if (!img.empty()) throw std::logic_error("prolongation: bracket beyond the top degree is nonzero");
            } else {
              auto c = level_coords[static_cast<std::size_t>(s)].coordinates(flatten_map(w, s));
              if (!c) throw std::logic_error("prolongation: bracket of nonnegative elements is not in the algebra");
              for (std::size_t i = 0; i < c->size(); ++i)
                if (sgn((*c)[i]) != 0)
                  result.emplace_back(static_cast<int>(offsets_[static_cast<std::size_t>(s)] + i), (*c)[i]);
            }
            SparseVector neg;
            for (const auto& [t, x] : result) neg.emplace_back(t, -x);
            nonneg[{u, v}] = result;
            nonneg[{v, u}] = neg;
          }
      }

    std::vector<BracketEntry> entries;
    for (const auto& e : m_.entries()) entries.push_back(e);
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t b = n; b < total; ++b) {
        SparseVector v;
        for (const auto& [t, c] : map_of(b)[y]) v.emplace_back(t, -c);
        if (!v.empty()) entries.push_back({static_cast<int>(y), static_cast<int>(b), std::move(v)});
      }
    for (const auto& [key, v] : nonneg)
      if (key.first < key.second && !v.empty())
        entries.push_back({static_cast<int>(key.first), static_cast<int>(key.second), v});
    return GradedAlgebra(name, std::move(labels), std::move(degrees), entries);
  }

 private:
  void push_level(std::vector<Map> level) {
    if (offsets_.empty()) offsets_.push_back(m_.dim());
    offsets_.push_back(offsets_.back() + level.size());
    levels_.push_back(std::move(level));
  }

  const Map& map_of(std::size_t global) const {
    for (std::size_t k = 0; k < levels_.size(); ++k)
      if (global < offsets_[k + 1]) return levels_[k][global - offsets_[k]];
    throw std::out_of_range("prolongation: global index out of range");
  }

  std::vector<std::size_t> global_indices_of_degree(int p) const {
    if (p < 0) return m_.indices_of_degree(p);
    std::vector<std::size_t> out;
    if (p <= top_degree())
      for (std::size_t i = offsets_[static_cast<std::size_t>(p)]; i < offsets_[static_cast<std::size_t>(p) + 1]; ++i)
        out.push_back(i);
    return out;
  }

  /// [e_b, e_y] for any computed element b and y in m.
  SparseVector bracket_with_negative(std::size_t b, std::size_t y) const {
    if (b < m_.dim()) return m_.bracket(b, y);
    return map_of(b)[y];
  }

  std::size_t flat_size(int k) const {
    std::size_t s = 0;
    for (std::size_t x = 0; x < m_.dim(); ++x) s += global_indices_of_degree(m_.degree(x) + k).size();
    return s;
  }

  Vector flatten_map(const Map& u, int k) const {
    Vector out;
    out.reserve(flat_size(k));
    for (std::size_t x = 0; x < m_.dim(); ++x) {
      auto targets = global_indices_of_degree(m_.degree(x) + k);
      Vector img = zero_vector(targets.size());
      for (const auto& [t, c] : u[x]) {
        auto it = std::find(targets.begin(), targets.end(), static_cast<std::size_t>(t));
        if (it == targets.end()) throw std::logic_error("prolongation: map leaves its degree");
        img[static_cast<std::size_t>(it - targets.begin())] = c;
      }
      out.insert(out.end(), img.begin(), img.end());
    }
    return out;
  }

  GradedAlgebra m_;
  SymBilinearForm g_;
  std::vector<std::vector<Map>> levels_;
  /// offsets_[k] = global index of the first element of degree k.
  std::vector<std::size_t> offsets_;
};

/// Runs prolongation steps until a component vanishes and assembles the
/// result. The assembled algebra is certified by a full Jacobi sweep.
inline ProlongationResult full_prolongation(const GradedAlgebra& m, const SymBilinearForm& g,
                                            int step_limit = default_step_limit()) {
  Prolongator p(m, g);
  int steps = 0;
  while (p.step())
    if (++steps >= step_limit)
      throw StepLimitExceeded("prolongation did not terminate within " + std::to_string(step_limit) + " steps");
  ProlongationResult out;
  out.full = p.assemble(m.name() + "^");
  out.boundary = p.top_degree();
  out.step_dims = dims_by_degree(out.full);
  out.form = g;
  out.negative_dim = m.dim();
  auto report = check_gla(out.full);
  if (!report.ok())
    throw std::logic_error("assembled prolongation fails check_gla: " + report.violations.front().describe(out.full));
  return out;
}

/// Transitivity: no nonzero element of degree >= 0 annihilates g_{-1}.
inline bool is_transitive(const GradedAlgebra& a) {
  const auto minus1 = a.indices_of_degree(-1);
  for (int p = 0; p <= a.max_degree(); ++p) {
    const auto comp = a.indices_of_degree(p);
    if (comp.empty()) continue;
    // Rows: one per (x, output coordinate); columns: elements of degree p.
    RowReducer red(comp.size());
    for (auto x : minus1)
      for (std::size_t t = 0; t < a.dim(); ++t) {
        Vector row = zero_vector(comp.size());
        bool any = false;
        for (std::size_t c = 0; c < comp.size(); ++c)
          for (const auto& [k, v] : a.bracket(comp[c], x))
            if (static_cast<std::size_t>(k) == t) {
              row[c] = v;
              any = true;
            }
        if (any) red.add_row(std::move(row));
      }
    if (red.rank() != comp.size()) return false;
  }
  return true;
}

}  // namespace glap
