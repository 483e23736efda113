#pragma once

// Root systems from Cartan matrices (Bourbaki numbering), gradings by a set
// of crossed nodes, and the expected rows of the classification table.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "glap/family_spec.hpp"
#include "glap/rational.hpp"

namespace glap {

class UnsupportedType : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Root = std::vector<int>;

struct RootSystem {
  std::string type_tag;
  int rank = 0;
  /// cartan[i][j] = <alpha_i, alpha_j^vee>.
  std::vector<std::vector<int>> cartan;
  /// Simple-root coordinates, ordered by height then lexicographically.
  std::vector<Root> positive_roots;

  std::size_t dimension() const { return static_cast<std::size_t>(rank) + 2 * positive_roots.size(); }
  const Root& highest_root() const { return positive_roots.back(); }
};

namespace detail {

/// Gram matrix of the simple roots, scaled so that entries are rational.
inline std::vector<std::vector<Rational>> simple_root_gram(const std::string& type, int l) {
  std::vector<std::vector<Rational>> g(static_cast<std::size_t>(l), std::vector<Rational>(static_cast<std::size_t>(l), 0));
  auto set = [&](int i, int j, Rational v) {
    g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
  };
  if (type == "A" || type == "B" || type == "C" || type == "D") {
    for (int i = 0; i + 1 < l; ++i) {
      set(i, i, 2);
      set(i, i + 1, -1);
    }
    if (type == "A") {
      set(l - 1, l - 1, 2);
    } else if (type == "B") {
      set(l - 1, l - 1, 1);  // e_l
    } else if (type == "C") {
      set(l - 1, l - 1, 4);  // 2 e_l
      set(l - 2, l - 1, -2);
    } else {
      // alpha_l = e_{l-1} + e_l
      set(l - 1, l - 1, 2);
      set(l - 2, l - 1, 0);
      set(l - 3, l - 1, -1);
    }
  } else if (type == "F4") {
    set(0, 0, 2);
    set(1, 1, 2);
    set(2, 2, 1);
    set(3, 3, 1);
    set(0, 1, -1);
    set(1, 2, -1);
    set(2, 3, Rational(-1, 2));
  } else if (type == "G2") {
    set(0, 0, 2);
    set(1, 1, 6);
    set(0, 1, -3);
  }
  return g;
}

inline std::string normalize_type(const std::string& type) {
  if (type == "F") return "F4";
  if (type == "G") return "G2";
  return type;
}

}  // namespace detail

/// Positive roots by simple-root strings: beta + alpha_i is a root iff
/// p - <beta, alpha_i^vee> > 0, where p is the largest k with beta - k alpha_i
/// a root.
inline RootSystem positive_roots(const std::string& type_in, int l) {
  const std::string type = detail::normalize_type(type_in);
  bool ok = (type == "A" && l >= 1) || (type == "B" && l >= 2) || (type == "C" && l >= 2) ||
            (type == "D" && l >= 4) || (type == "F4" && l == 4) || (type == "G2" && l == 2);
  if (!ok) throw UnsupportedType("unsupported root system " + type_in + " of rank " + std::to_string(l));
  const auto gram = detail::simple_root_gram(type, l);
  const auto n = static_cast<std::size_t>(l);

  RootSystem rs{type, l, std::vector<std::vector<int>>(n, std::vector<int>(n)), {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = 2 * gram[i][j] / gram[j][j];
      if (c.get_den() != 1) throw std::logic_error("non-integral Cartan entry");
      rs.cartan[i][j] = static_cast<int>(c.get_num().get_si());
    }

  std::set<Root> known;
  std::vector<Root> level;
  for (std::size_t i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    level.push_back(r);
    known.insert(r);
  }
  while (!level.empty()) {
    std::sort(level.begin(), level.end());
    rs.positive_roots.insert(rs.positive_roots.end(), level.begin(), level.end());
    std::set<Root> next;
    for (const auto& beta : level)
      for (std::size_t i = 0; i < n; ++i) {
        int pairing = 0;
        for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * rs.cartan[j][i];
        int p = 0;
        Root down = beta;
        while (down[i] > 0) {
          --down[i];
          if (!known.count(down)) break;
          ++p;
        }
        if (p - pairing > 0) {
          Root up = beta;
          ++up[i];
          next.insert(up);
        }
      }
    level.assign(next.begin(), next.end());
    known.insert(next.begin(), next.end());
  }
  return rs;
}

struct GradedDims {
  std::map<int, std::size_t> dims;
  /// Node (1-based) -> number of degree -1 roots whose crossed part is that node.
  std::map<int, std::size_t> minus1_components;
  int kind = 0;
};

/// Grading by the crossed nodes (1-based): degree of a root is the sum of its
/// coefficients on the crossed nodes.
inline GradedDims graded_dims(const RootSystem& rs, const std::vector<int>& crossed) {
  if (crossed.empty()) throw std::invalid_argument("graded_dims: crossed node set is empty");
  for (int c : crossed)
    if (c < 1 || c > rs.rank) throw std::invalid_argument("graded_dims: crossed node out of range");
  GradedDims out;
  out.dims[0] = static_cast<std::size_t>(rs.rank);
  for (int c : crossed) out.minus1_components[c] = 0;
  for (const auto& r : rs.positive_roots) {
    int d = 0;
    for (int c : crossed) d += r[static_cast<std::size_t>(c - 1)];
    if (d == 0) {
      out.dims[0] += 2;
      continue;
    }
    ++out.dims[d];
    ++out.dims[-d];
    if (d == 1)
      for (int c : crossed)
        if (r[static_cast<std::size_t>(c - 1)] == 1) ++out.minus1_components[c];
  }
  out.kind = out.dims.rbegin()->first;
  return out;
}

/// Expected row of the classification table for a family.
struct TableExpectation {
  std::string type;
  int rank = 0;
  std::vector<int> crossed;
  std::map<int, std::size_t> dims;
  int r = 0;
  int s = 0;
  std::string satake;
  ModuleClass module_class = ModuleClass::Unclassified;
  int kind = 0;
};

inline TableExpectation table_expectation(const FamilySpec& spec) {
  spec.validate();
  TableExpectation e;
  const int p = spec.p, q = spec.q, n = 2 * p + q;
  switch (spec.tag) {
    case FamilyTag::HC:
      e = {"A", n - 1, {1, n - 1}, {}, 2 * p + 2 * q - 2, 2 * p - 2, "", ModuleClass::SII, 0};
      if (p >= 2 && q >= 1)
        e.satake = "(AIIIa)_{" + std::to_string(n - 1) + "," + std::to_string(p) + "}";
      else if (q == 0)
        e.satake = "(AIIIb)_" + std::to_string(n - 1);
      else
        e.satake = "(AIV)_" + std::to_string(n - 1);
      break;
    case FamilyTag::HCsplit:
      e = {"A", n - 1, {1, n - 1}, {}, n - 2, n - 2, "(AI)_" + std::to_string(n - 1), ModuleClass::SIII, 0};
      break;
    case FamilyTag::HH:
      e = {"C", n, {2}, {}, 4 * p + 4 * q - 4, 4 * p - 4, "", ModuleClass::SI, 0};
      e.satake = (q == 0 ? "(CIIb)_" + std::to_string(n)
                         : "(CIIa)_{" + std::to_string(n) + "," + std::to_string(p) + "}");
      break;
    case FamilyTag::HHsplit:
      e = {"C", n, {2}, {}, 4 * p + 2 * q - 4, 4 * p + 2 * q - 4, "(CI)_" + std::to_string(n), ModuleClass::SI, 0};
      break;
    case FamilyTag::HO:
      e = {"F4", 4, {4}, {}, 8, 0, "FII", ModuleClass::SI, 0};
      break;
    case FamilyTag::HOsplit:
      e = {"F4", 4, {4}, {}, 4, 4, "FI", ModuleClass::SI, 0};
      break;
    case FamilyTag::BI:
      e = {"B", spec.l, {1, spec.l}, {}, spec.l - 1, spec.l - 1,
           "(BI)_{" + std::to_string(spec.l) + "," + std::to_string(spec.l) + "}", ModuleClass::SIII, 0};
      break;
    case FamilyTag::G:
      e = {"G2", 2, {1, 2}, {}, 1, 1, "G2(2)", ModuleClass::SIII, 0};
      break;
    case FamilyTag::Counterexample:
      throw BadParameters("the counterexample has no row in the classification table");
  }
  auto g = graded_dims(positive_roots(e.type, e.rank), e.crossed);
  e.dims = g.dims;
  e.kind = g.kind;
  return e;
}

inline std::string type_label(const TableExpectation& e) {
  std::string nodes;
  for (std::size_t i = 0; i < e.crossed.size(); ++i) nodes += (i ? ",a" : "a") + std::to_string(e.crossed[i]);
  return "(" + e.satake + ",{" + nodes + "})";
}

/// Every family instance within the parameter caps.
inline std::vector<FamilySpec> all_table_families() {
  std::vector<FamilySpec> out;
  for (auto tag : {FamilyTag::HC, FamilyTag::HCsplit, FamilyTag::HH, FamilyTag::HHsplit})
    for (int p = 1; 2 * p <= kMaxMatrixSize; ++p)
      for (int q = 0; 2 * p + q <= kMaxMatrixSize; ++q)
        if (2 * p + q >= 3) out.push_back(FamilySpec::hk(tag, p, q));
  for (int l = 2; l <= kMaxBIRank; ++l) out.push_back(FamilySpec::bi(l));
  out.push_back(FamilySpec::simple(FamilyTag::HO));
  out.push_back(FamilySpec::simple(FamilyTag::HOsplit));
  out.push_back(FamilySpec::simple(FamilyTag::G));
  return out;
}

/// Label of the first table row whose graded dims, signature (up to the
/// overall sign of g) and module class match.
inline std::optional<std::string> match_table_row(const std::map<int, std::size_t>& dims, int r, int s,
                                                  ModuleClass cls) {
  for (const auto& spec : all_table_families()) {
    auto e = table_expectation(spec);
    bool sig = (e.r == r && e.s == s) || (e.r == s && e.s == r);
    if (sig && e.dims == dims && e.module_class == cls) return spec.label() + ": " + type_label(e);
  }
  return std::nullopt;
}

}  // namespace glap
