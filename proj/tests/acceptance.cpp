// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "glap/glap.hpp"

using namespace glap;

namespace {

/// Collects failure messages for one criterion.
struct Criterion {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Dims = std::map<int, std::size_t>;

const std::vector<FamilySpec>& table_rows() {
  static const std::vector<FamilySpec> rows{
      FamilySpec::hk(FamilyTag::HC, 1, 1),      FamilySpec::hk(FamilyTag::HC, 2, 1),
      FamilySpec::hk(FamilyTag::HCsplit, 1, 1), FamilySpec::hk(FamilyTag::HCsplit, 2, 1),
      FamilySpec::hk(FamilyTag::HH, 1, 1),      FamilySpec::hk(FamilyTag::HHsplit, 1, 1),
      FamilySpec::bi(2),                        FamilySpec::bi(3),
      FamilySpec::simple(FamilyTag::HO),        FamilySpec::simple(FamilyTag::HOsplit),
      FamilySpec::simple(FamilyTag::G)};
  return rows;
}

std::vector<FamilySpec> all_builders() {
  auto out = table_rows();
  out.push_back(FamilySpec::hk(FamilyTag::HH, 1, 2));
  out.push_back(FamilySpec::hk(FamilyTag::HC, 2, 0));
  out.push_back(FamilySpec::simple(FamilyTag::Counterexample));
  return out;
}

/// Builds and prolongations are shared between criteria.
struct Computed {
  FamilyBuild build;
  ProlongationResult prolongation;
};

const Computed& computed(const FamilySpec& spec) {
  static std::map<std::string, Computed> cache;
  auto it = cache.find(spec.label());
  if (it == cache.end()) {
    auto b = build_family(spec);
    auto p = full_prolongation(b.m, b.g);
    it = cache.emplace(spec.label(), Computed{std::move(b), std::move(p)}).first;
  }
  return it->second;
}

void ac1(Criterion& c) {
  for (const auto& row : verify_table(table_rows())) {
    c.expect(row.pass(), row.family + ": " + summary_line(row));
    c.expect(row.signature.value_or(false), row.family + ": signature differs from the table formula");
    c.expect(row.prolong_dims_match_oracle.value_or(false), row.family + ": graded dims differ from the oracle");
  }
}

void ac2(Criterion& c) {
  const std::vector<std::pair<FamilySpec, std::size_t>> cases{
      {FamilySpec::hk(FamilyTag::HC, 1, 1), 8},      {FamilySpec::hk(FamilyTag::HH, 1, 1), 21},
      {FamilySpec::simple(FamilyTag::HO), 52},       {FamilySpec::simple(FamilyTag::HOsplit), 52},
      {FamilySpec::simple(FamilyTag::G), 14},        {FamilySpec::bi(3), 21}};
  for (const auto& [spec, expected] : cases) {
    const auto& p = computed(spec).prolongation;
    const auto e = table_expectation(spec);
    const auto oracle_dim = positive_roots(e.type, e.rank).dimension();
    c.expect(p.full.dim() == expected && oracle_dim == expected,
             spec.label() + ": total " + std::to_string(p.full.dim()) + ", oracle " + std::to_string(oracle_dim));
  }
}

void ac3(Criterion& c) {
  auto rows = table_rows();
  rows.push_back(FamilySpec::hk(FamilyTag::HH, 1, 2));
  for (const auto& spec : rows) {
    const auto& full = computed(spec).prolongation.full;
    c.expect(is_semisimple(full), spec.label() + ": not semisimple");
    c.expect(is_simple(full), spec.label() + ": not simple");
  }
  const auto& cx = computed(FamilySpec::simple(FamilyTag::Counterexample)).prolongation.full;
  c.expect(!is_semisimple(cx), "counterexample: reported semisimple");
  c.expect(cx.indices_of_degree(1).size() >= 2, "counterexample: dim g_1 < 2");
}

void ac4(Criterion& c) {
  for (const auto& spec : all_builders()) {
    const auto& b = computed(spec).build;
    const auto g0 = conformal_g0(b.m, b.g);
    const auto split = characteristic_split(g0);
    c.expect(split.eta_of_characteristic == -2, spec.label() + ": eta(E) != -2");
    c.expect(split.hat_g0.size() + 1 == g0.size(), spec.label() + ": g0 != RE + ker eta");
    for (const auto& h : split.hat_g0) {
      auto eta = conformal_factor(h, b.g);
      c.expect(eta && sgn(*eta) == 0, spec.label() + ": kernel element with nonzero eta");
    }
    for (std::size_t i = 0; i < g0.size(); ++i)
      for (std::size_t j = i + 1; j < g0.size(); ++j) {
        const auto& x = g0.elements[i];
        const auto& y = g0.elements[j];
        RationalMatrix br = x * y - y * x;
        auto eta = conformal_factor(br, b.g);
        c.expect(eta && sgn(*eta) == 0,
                 spec.label() + ": [g0, g0] not in ker eta at pair " + std::to_string(i) + "," + std::to_string(j));
      }
  }
}

bool same_subspace(const DerivationBasis& a, const DerivationBasis& b) {
  const std::size_t n = a.m.dim() * a.m.dim();
  auto va = a.flattened(), vb = b.flattened();
  auto both = va;
  both.insert(both.end(), vb.begin(), vb.end());
  return rank_of(va, n) == rank_of(vb, n) && rank_of(both, n) == rank_of(va, n);
}

void ac5(Criterion& c) {
  const std::vector<FamilySpec> specs{FamilySpec::hk(FamilyTag::HC, 1, 1), FamilySpec::hk(FamilyTag::HHsplit, 1, 1),
                                      FamilySpec::bi(3), FamilySpec::simple(FamilyTag::G)};
  for (const auto& spec : specs) {
    const auto& b = computed(spec).build;
    const auto base = conformal_g0(b.m, b.g);
    for (const Rational& lambda : {Rational(2), Rational(1, 3), Rational(-1)})
      c.expect(same_subspace(base, conformal_g0(b.m, b.g.scaled(lambda))),
               spec.label() + ": g0 changes under scaling by " + to_string(lambda));
    const auto neg = full_prolongation(b.m, b.g.scaled(-1));
    c.expect(dims_by_degree(neg.full) == dims_by_degree(computed(spec).prolongation.full),
             spec.label() + ": prolongation dims change under g -> -g");
  }
}

void ac6(Criterion& c) {
  const std::vector<FamilySpec> s3{FamilySpec::hk(FamilyTag::HCsplit, 1, 1), FamilySpec::hk(FamilyTag::HCsplit, 2, 1),
                                   FamilySpec::bi(2), FamilySpec::bi(3), FamilySpec::simple(FamilyTag::G)};
  for (const auto& spec : s3) {
    const auto& p = computed(spec).prolongation;
    const auto cls = classify_module(minus1_action(p.full), p.form.size());
    c.expect(cls.cls == ModuleClass::SIII && cls.split.has_value(), spec.label() + ": not SIII");
    if (!cls.split) continue;
    try {
      c.expect(isotropic_split_check(p.form, *cls.split).ok(), spec.label() + ": split not isotropic");
    } catch (const std::exception& e) {
      c.expect(false, spec.label() + ": " + e.what());
    }
  }
  auto rows = all_builders();
  for (const auto& spec : rows) {
    const auto r = analyze(computed(spec).prolongation);
    if (r.module_class == ModuleClass::SIII) c.expect(r.r == r.s, spec.label() + ": SIII with r != s");
  }
}

void ac7(Criterion& c) {
  const auto f4 = positive_roots("F4", 4);
  const auto g2 = positive_roots("G2", 2);
  c.expect(f4.positive_roots.size() == 24 && f4.dimension() == 52, "F4 counts");
  c.expect(g2.positive_roots.size() == 6 && g2.dimension() == 14, "G2 counts");
  for (int l = 1; l <= 7; ++l)
    c.expect(positive_roots("A", l).dimension() == static_cast<std::size_t>(l * (l + 2)), "A dimension");
  for (int l = 2; l <= 7; ++l) {
    c.expect(positive_roots("B", l).dimension() == static_cast<std::size_t>(l * (2 * l + 1)), "B dimension");
    c.expect(positive_roots("C", l).dimension() == static_cast<std::size_t>(l * (2 * l + 1)), "C dimension");
  }
  for (const auto& spec : all_table_families()) {
    const auto e = table_expectation(spec);
    for (const auto& [p, n] : e.dims) c.expect(e.dims.count(-p) && e.dims.at(-p) == n, spec.label() + ": asymmetric dims");
    int hr = 0;
    const auto rs = positive_roots(e.type, e.rank);
    for (int node : e.crossed) hr += rs.highest_root()[static_cast<std::size_t>(node - 1)];
    c.expect(hr == e.kind, spec.label() + ": kind differs from highest-root coefficients");
  }
  for (const auto& spec : table_rows()) {
    const auto& b = computed(spec).build;
    c.expect(check_fundamental(b.m).kind == table_expectation(spec).kind, spec.label() + ": oracle kind != FGLA kind");
  }
}

void ac8(Criterion& c) {
  std::mt19937 rng(2024);
  for (const auto& spec : all_builders()) {
    const auto& [b, p] = computed(spec);
    c.expect(check_gla(b.m).ok(), spec.label() + ": m fails check_gla");
    c.expect(check_fundamental(b.m).is_fgla, spec.label() + ": m not fundamental");
    c.expect(check_gla(p.full).ok(), spec.label() + ": prolongation fails Jacobi");
    if (b.ambient) c.expect(check_gla(*b.ambient).ok(), spec.label() + ": ambient fails check_gla");
    const auto& gm = b.g.matrix();
    const auto sig = signature_of_symmetric(gm);
    for (int t = 0; t < 20; ++t) {
      // random unimodular P via elementary column operations
      auto pm = RationalMatrix::identity(gm.rows());
      std::uniform_int_distribution<std::size_t> idx(0, gm.rows() - 1);
      std::uniform_int_distribution<int> coef(-3, 3);
      for (int k = 0; k < 8; ++k) {
        auto i = idx(rng), j = idx(rng);
        if (i == j) continue;
        const Rational f = coef(rng);
        for (std::size_t r = 0; r < gm.rows(); ++r) pm(r, j) += f * pm(r, i);
      }
      c.expect(signature_of_symmetric(pm.transpose() * gm * pm) == sig, spec.label() + ": signature not invariant");
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"AC1 classification table reproduction", ac1},
      {"AC2 prolongation dimensions", ac2},
      {"AC3 simplicity", ac3},
      {"AC4 characteristic element split of g0", ac4},
      {"AC5 conformal invariance", ac5},
      {"AC6 isotropic splits for SIII", ac6},
      {"AC7 root oracle self-consistency", ac7},
      {"AC8 core invariants", ac8},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Criterion c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    all = all && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    for (const auto& f : c.failures) std::cout << "    " << f << "\n";
  }
  return all ? 0 : 1;
}
