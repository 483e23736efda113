#pragma once

// Structure of a prolonged algebra: Killing form, centroid and simplicity,
// the commutant of g_0 on g_{-1} and the SI/SII/SIII classification, checks
// on isotropic splittings, the rank bound for tagged diagonal subspaces and
// comparison of two forms.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "glap/family_spec.hpp"
#include "glap/graded_algebra.hpp"
#include "glap/linalg.hpp"
#include "glap/prolongation.hpp"
#include "glap/roots.hpp"

namespace glap {

class NotSemisimple : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotIsotropic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneratePairing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoCartanTag : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// B(x, y) = tr(ad x ad y) in the basis of `a`.
inline RationalMatrix killing_form(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  RationalMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const RationalMatrix adi = a.ad_matrix(i);
    for (std::size_t j = i; j < n; ++j) {
      // tr(ad_i ad_j) = sum over nonzero (k, t) of ad_j of ad_j(k, t) * ad_i(t, k)
      Rational s = 0;
      for (std::size_t t = 0; t < n; ++t)
        for (const auto& [k, v] : a.bracket(j, t)) s += v * adi(t, static_cast<std::size_t>(k));
      b(i, j) = b(j, i) = s;
    }
  }
  return b;
}

inline bool is_semisimple(const GradedAlgebra& a) { return a.dim() > 0 && is_invertible(killing_form(a)); }

namespace detail {

inline std::vector<std::size_t> generator_order(const GradedAlgebra& a) {
  std::vector<std::size_t> idx(a.dim());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  auto key = [&](std::size_t i) {
    int d = a.degree(i);
    return std::make_tuple(d == 0 ? 1 : 0, d < 0 ? -d : d, d > 0 ? 1 : 0, i);
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
  return idx;
}

/// ad(e_g) * m using the sparse bracket table.
inline RationalMatrix ad_times(const GradedAlgebra& a, std::size_t g, const RationalMatrix& m) {
  RationalMatrix out(a.dim(), m.cols());
  for (std::size_t t = 0; t < a.dim(); ++t)
    for (const auto& [k, v] : a.bracket(g, t))
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (sgn(m(t, c)) != 0) out(static_cast<std::size_t>(k), c) += v * m(t, c);
  return out;
}

/// Whether the grading derivation is ad of some element.
inline bool grading_is_inner(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  RationalMatrix sys(n * n, n);
  Vector rhs = zero_vector(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t)
      for (const auto& [k, v] : a.bracket(i, t)) sys(static_cast<std::size_t>(k) * n + t, i) = v;
  for (std::size_t t = 0; t < n; ++t) rhs[t * n + t] = a.degree(t);
  return solve(sys, rhs).has_value();
}

}  // namespace detail

/// Basis of the centroid {phi : phi[x, y] = [x, phi y]}.
///
/// A centroid element is fixed by its values on a generating set, and it
/// suffices to impose commutation with ad of the generators. When the grading
/// is inner, centroid elements preserve degrees, which shrinks the unknowns.
inline std::vector<RationalMatrix> centroid(const GradedAlgebra& a) {
  const std::size_t n = a.dim();
  if (n == 0) return {};
  const bool graded = detail::grading_is_inner(a);

  // Spanning family built from generators by repeated ad_g.
  struct Origin {
    std::size_t gen;     // index into gens
    long parent;         // -1 for a generator itself
  };
  std::vector<std::size_t> gens;
  std::vector<Vector> span;
  std::vector<Origin> origin;
  RowReducer closure(n);
  std::vector<std::size_t> done;  // per generator: number of span elements processed
  for (std::size_t cand : detail::generator_order(a)) {
    if (closure.rank() == n) break;
    Vector e = unit_vector(n, cand);
    if (closure.in_span(e)) continue;
    gens.push_back(cand);
    done.push_back(0);
    closure.add_row(e);
    span.push_back(e);
    origin.push_back({gens.size() - 1, -1});
    bool grew = true;
    while (grew && closure.rank() < n) {
      grew = false;
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (; done[g] < span.size(); ++done[g]) {
          Vector w = a.bracket_basis(gens[g], span[done[g]]);
          if (closure.add_row(w)) {
            span.push_back(std::move(w));
            origin.push_back({g, static_cast<long>(done[g])});
            grew = true;
          }
        }
    }
  }

  // Unknowns: coordinates of phi(generator).
  std::vector<std::vector<std::size_t>> allowed(gens.size());
  std::vector<std::size_t> first(gens.size() + 1, 0);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    for (std::size_t t = 0; t < n; ++t)
      if (!graded || a.degree(t) == a.degree(gens[g])) allowed[g].push_back(t);
    first[g + 1] = first[g] + allowed[g].size();
  }
  const std::size_t u = first.back();

  // phi(span element) as an n x u matrix in the unknowns.
  std::vector<RationalMatrix> phi_span;
  for (std::size_t s = 0; s < span.size(); ++s) {
    const auto& o = origin[s];
    if (o.parent < 0) {
      RationalMatrix p(n, u);
      for (std::size_t i = 0; i < allowed[o.gen].size(); ++i) p(allowed[o.gen][i], first[o.gen] + i) = 1;
      phi_span.push_back(std::move(p));
    } else {
      phi_span.push_back(detail::ad_times(a, gens[o.gen], phi_span[static_cast<std::size_t>(o.parent)]));
    }
  }

  // phi(e_j) through the change of basis from the spanning family.
  auto change = inverse(RationalMatrix::from_columns(span, n));
  if (!change) throw std::logic_error("centroid: generator closure does not span the algebra");
  std::vector<RationalMatrix> phi_basis;
  for (std::size_t j = 0; j < n; ++j) {
    RationalMatrix p(n, u);
    for (std::size_t k = 0; k < n; ++k)
      if (sgn((*change)(k, j)) != 0) p += phi_span[k] * (*change)(k, j);
    phi_basis.push_back(std::move(p));
  }

  // phi([g, e_j]) = [g, phi(e_j)] for every generator g.
  RowReducer red(u);
  for (std::size_t g = 0; g < gens.size() && red.rank() + 1 < u; ++g)
    for (std::size_t j = 0; j < n && red.rank() + 1 < u; ++j) {
      RationalMatrix lhs(n, u);
      for (const auto& [t, v] : a.bracket(gens[g], j)) lhs += phi_basis[static_cast<std::size_t>(t)] * v;
      lhs -= detail::ad_times(a, gens[g], phi_basis[j]);
      for (std::size_t r = 0; r < n; ++r) {
        Vector row = lhs.row(r);
        if (!is_zero(row)) red.add_row(std::move(row));
      }
    }

  std::vector<RationalMatrix> out;
  for (const auto& k : red.kernel_basis()) {
    RationalMatrix phi(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      Vector col = phi_basis[j].apply(k);
      for (std::size_t r = 0; r < n; ++r) phi(r, j) = col[r];
    }
    out.push_back(std::move(phi));
  }
  return out;
}

/// Whether phi commutes with every ad(e_i); independent check of a centroid element.
inline bool is_centroid_element(const GradedAlgebra& a, const RationalMatrix& phi) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto ad = a.ad_matrix(i);
    if (!(phi * ad == ad * phi)) return false;
  }
  return true;
}

struct SimplicityReport {
  enum class Verdict { Simple, NotSimple, Undetermined } verdict = Verdict::Undetermined;
  std::size_t centroid_dim = 0;
  /// For a 2-dimensional centroid: J^2 = a id with J the trace-adjusted generator.
  std::optional<Rational> j_square;
  /// A nontrivial idempotent of the centroid, when one was found.
  std::optional<RationalMatrix> idempotent;
  bool simple() const { return verdict == Verdict::Simple; }
};

namespace detail {

/// A nontrivial idempotent in the algebra generated by phi, from a rational eigensplit.
inline std::optional<RationalMatrix> idempotent_from(const RationalMatrix& phi) {
  const std::size_t n = phi.rows();
  auto split = rational_eigensplit(phi);
  if (!split.complete(n) || split.spaces.size() < 2) return std::nullopt;
  // Projection onto the first eigenspace along the others.
  std::vector<Vector> cols;
  for (const auto& s : split.spaces) cols.insert(cols.end(), s.basis.begin(), s.basis.end());
  auto p = RationalMatrix::from_columns(cols, n);
  RationalMatrix d(n, n);
  for (std::size_t i = 0; i < split.spaces.front().basis.size(); ++i) d(i, i) = 1;
  return p * d * *inverse(p);
}

}  // namespace detail

/// Simplicity of a semisimple algebra through its centroid.
inline SimplicityReport simplicity(const GradedAlgebra& a) {
  if (!is_semisimple(a)) throw NotSemisimple("simplicity: algebra is not semisimple");
  SimplicityReport out;
  auto c = centroid(a);
  out.centroid_dim = c.size();
  const std::size_t n = a.dim();
  const auto id = RationalMatrix::identity(n);
  if (c.size() == 1) {
    out.verdict = SimplicityReport::Verdict::Simple;
    return out;
  }
  if (c.size() == 2) {
    const RationalMatrix& phi = SpanCoordinates({flatten(id)}, n * n).coordinates(flatten(c[0])) ? c[1] : c[0];
    SpanCoordinates basis({flatten(id), flatten(phi)}, n * n);
    auto sq = basis.coordinates(flatten(phi * phi));
    if (!sq) throw std::logic_error("simplicity: centroid is not closed under composition");
    const Rational alpha = (*sq)[0], beta = (*sq)[1];
    // J = phi - beta/2 id satisfies J^2 = (alpha + beta^2/4) id.
    out.j_square = alpha + beta * beta / 4;
    if (sgn(*out.j_square) < 0) {
      out.verdict = SimplicityReport::Verdict::Simple;
      return out;
    }
    out.verdict = SimplicityReport::Verdict::NotSimple;
    out.idempotent = detail::idempotent_from(phi);
    return out;
  }
  for (std::size_t i = 0; i < c.size() && !out.idempotent; ++i) out.idempotent = detail::idempotent_from(c[i]);
  for (std::size_t i = 0; i < c.size() && !out.idempotent; ++i)
    for (std::size_t j = i + 1; j < c.size() && !out.idempotent; ++j) out.idempotent = detail::idempotent_from(c[i] + c[j]);
  out.verdict = out.idempotent ? SimplicityReport::Verdict::NotSimple : SimplicityReport::Verdict::Undetermined;
  return out;
}

inline bool is_simple(const GradedAlgebra& a) { return simplicity(a).simple(); }

/// {phi in End(V) : phi rho = rho phi for every rho}.
inline std::vector<RationalMatrix> commutant(const std::vector<RationalMatrix>& action, std::size_t d) {
  RowReducer red(d * d);
  for (const auto& rho : action) {
    if (rho.rows() != d || rho.cols() != d) throw DimensionMismatch("commutant: action matrix has wrong size");
    // (phi rho - rho phi)(r, c) = sum_k phi(r,k) rho(k,c) - rho(r,k) phi(k,c)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        Vector row = zero_vector(d * d);
        for (std::size_t k = 0; k < d; ++k) {
          row[r * d + k] += rho(k, c);
          row[k * d + c] -= rho(r, k);
        }
        if (!is_zero(row)) red.add_row(std::move(row));
      }
  }
  std::vector<RationalMatrix> out;
  for (const auto& v : red.kernel_basis()) {
    RationalMatrix phi(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) phi(r, c) = v[r * d + c];
    out.push_back(std::move(phi));
  }
  return out;
}

/// Restriction of g_0 elements (acting on m) to g_{-1}.
inline std::vector<RationalMatrix> minus1_action(const DerivationBasis& g0, const SymBilinearForm& g) {
  const auto& idx = g.indices();
  std::vector<RationalMatrix> out;
  for (const auto& d : g0.elements) {
    RationalMatrix r(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = d(idx[i], idx[j]);
    out.push_back(std::move(r));
  }
  return out;
}

/// ad of the degree-0 elements of a graded algebra, restricted to g_{-1}.
inline std::vector<RationalMatrix> minus1_action(const GradedAlgebra& full) {
  const auto idx = full.indices_of_degree(-1);
  std::vector<std::size_t> pos(full.dim(), SIZE_MAX);
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
  std::vector<RationalMatrix> out;
  for (auto a : full.indices_of_degree(0)) {
    RationalMatrix r(idx.size(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (const auto& [k, v] : full.bracket(a, idx[j])) r(pos[static_cast<std::size_t>(k)], j) = v;
    out.push_back(std::move(r));
  }
  return out;
}

struct ModuleSplit {
  std::vector<Vector> first;
  std::vector<Vector> second;
};

struct ModuleClassification {
  ModuleClass cls = ModuleClass::Unclassified;
  std::size_t commutant_dim = 0;
  /// For SIII: invariant decomposition of g_{-1} (coordinates in g_{-1}).
  std::optional<ModuleSplit> split;
  /// For SII: J with J^2 = -c id.
  std::optional<RationalMatrix> complex_structure;
  std::string warning;
};

/// SI/SII/SIII from the commutant of the g_0-action on g_{-1}.
inline ModuleClassification classify_module(const std::vector<RationalMatrix>& action, std::size_t d) {
  ModuleClassification out;
  auto comm = commutant(action, d);
  out.commutant_dim = comm.size();

  auto try_split = [&](const RationalMatrix& phi) -> bool {
    auto s = rational_eigensplit(phi);
    if (!s.complete(d) || s.spaces.size() < 2) return false;
    ModuleSplit split;
    split.first = s.spaces.front().basis;
    for (std::size_t i = 1; i < s.spaces.size(); ++i)
      split.second.insert(split.second.end(), s.spaces[i].basis.begin(), s.spaces[i].basis.end());
    out.split = std::move(split);
    return true;
  };
  for (std::size_t i = 0; i < comm.size() && !out.split; ++i) try_split(comm[i]);
  for (std::size_t i = 0; i < comm.size() && !out.split; ++i)
    for (std::size_t j = i + 1; j < comm.size() && !out.split; ++j) try_split(comm[i] + comm[j]);
  if (out.split) {
    out.cls = ModuleClass::SIII;
    return out;
  }

  if (comm.size() == 2) {
    RationalMatrix x(d, d);
    for (std::size_t i = 0; i < comm.size(); ++i) x += comm[i] * Rational(static_cast<long>(i + 1));
    RationalMatrix j = x - RationalMatrix::identity(d) * (x.trace() / Rational(static_cast<long>(d)));
    RationalMatrix sq = j * j;
    const Rational c = -sq(0, 0);
    if (sgn(c) > 0 && sq == RationalMatrix::identity(d) * (-c)) {
      out.cls = ModuleClass::SII;
      out.complex_structure = j;
      return out;
    }
  }
  if (comm.size() == 1 || comm.size() == 4) {
    out.cls = ModuleClass::SI;
    if (comm.size() == 4) out.warning = "commutant of dimension 4 accepted as quaternionic without further checks";
  }
  return out;
}

inline ModuleClassification classify_module(const DerivationBasis& g0, const SymBilinearForm& g) {
  return classify_module(minus1_action(g0, g), g.size());
}

struct IsotropicSplitReport {
  bool first_isotropic = false;
  bool second_isotropic = false;
  std::size_t pairing_rank = 0;
  bool ok() const { return first_isotropic && second_isotropic; }
};

/// Both parts totally isotropic and the cross pairing nondegenerate.
inline IsotropicSplitReport isotropic_split_check(const SymBilinearForm& g, const ModuleSplit& split) {
  const auto& G = g.matrix();
  auto gram = [&](const std::vector<Vector>& a, const std::vector<Vector>& b) {
    RationalMatrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = dot(a[i], G.apply(b[j]));
    return m;
  };
  IsotropicSplitReport out;
  out.first_isotropic = gram(split.first, split.first).is_zero();
  out.second_isotropic = gram(split.second, split.second).is_zero();
  if (!out.ok()) throw NotIsotropic("split part is not totally isotropic");
  auto pairing = gram(split.first, split.second);
  out.pairing_rank = rank(pairing);
  if (split.first.size() != split.second.size() || out.pairing_rank != split.first.size())
    throw DegeneratePairing("pairing between the split parts is degenerate");
  return out;
}

/// dim(tag) <= min(r, s) + 1 for a tagged abelian diagonal subspace.
inline bool rank_bound_check_split(const GradedAlgebra& a, const std::optional<std::vector<Vector>>& tag, int r, int s) {
  if (!tag) throw NoCartanTag("no diagonal subspace is tagged for this algebra");
  for (std::size_t i = 0; i < tag->size(); ++i)
    for (std::size_t j = i + 1; j < tag->size(); ++j)
      if (!is_zero(bracket_eval(a, (*tag)[i], (*tag)[j])))
        throw std::logic_error("rank_bound_check_split: tagged subspace is not abelian");
  const std::size_t dim = rank_of(*tag, a.dim());
  return static_cast<int>(dim) <= std::min(r, s) + 1;
}

struct FormTransport {
  RationalMatrix phi;
  std::optional<Rational> lambda;
  std::string verdict() const { return lambda ? "proportional(" + to_string(*lambda) + ")" : "not proportional"; }
};

/// phi = g1^sharp g2^flat, i.e. G1^{-1} G2 in matrix terms.
inline FormTransport form_transport(const SymBilinearForm& g1, const SymBilinearForm& g2) {
  if (g1.indices() != g2.indices()) throw DimensionMismatch("form_transport: forms live on different spaces");
  FormTransport out{*inverse(g1.matrix()) * g2.matrix(), std::nullopt};
  const std::size_t n = g1.size();
  if (n > 0 && out.phi == RationalMatrix::identity(n) * out.phi(0, 0)) out.lambda = out.phi(0, 0);
  return out;
}

struct AnalysisReport {
  std::map<int, std::size_t> dims;
  int kind = 0;
  bool semisimple = false;
  bool simple = false;
  int r = 0;
  int s = 0;
  ModuleClass module_class = ModuleClass::Unclassified;
  std::optional<std::string> matched_table_row;
  std::size_t centroid_dim = 0;
  /// Not serialized.
  ModuleClassification module;
  SimplicityReport simplicity;
};

/// Full analysis of a prolongation together with its form.
inline AnalysisReport analyze(const GradedAlgebra& full, const SymBilinearForm& g) {
  AnalysisReport out;
  out.dims = dims_by_degree(full);
  out.kind = full.dim() == 0 ? 0 : -full.min_degree();
  out.semisimple = is_semisimple(full);
  if (out.semisimple) {
    out.simplicity = simplicity(full);
    out.simple = out.simplicity.simple();
    out.centroid_dim = out.simplicity.centroid_dim;
  } else {
    out.centroid_dim = centroid(full).size();
  }
  auto sig = g.signature();
  out.r = static_cast<int>(sig.positive);
  out.s = static_cast<int>(sig.negative);
  out.module = classify_module(minus1_action(full), g.size());
  out.module_class = out.module.cls;
  if (out.simple) out.matched_table_row = match_table_row(out.dims, out.r, out.s, out.module_class);
  return out;
}

inline AnalysisReport analyze(const ProlongationResult& p) { return analyze(p.full, p.form); }

inline nlohmann::json to_json(const AnalysisReport& r) {
  nlohmann::json dims = nlohmann::json::object();
  for (const auto& [p, n] : r.dims) dims[std::to_string(p)] = n;
  return nlohmann::json{{"dims", dims},
                        {"kind", r.kind},
                        {"semisimple", r.semisimple},
                        {"simple", r.simple},
                        {"signature", {r.r, r.s}},
                        {"module_class", to_string(r.module_class)},
                        {"matched_table_row", r.matched_table_row ? nlohmann::json(*r.matched_table_row) : nlohmann::json()},
                        {"centroid_dim", r.centroid_dim}};
}

}  // namespace glap
