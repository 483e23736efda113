#pragma once

// End-to-end reproduction of the classification table: build each family,
// prolong, analyze, and compare with the root-system oracle.

#include <optional>
#include <string>
#include <vector>

#include "glap/analysis.hpp"
#include "glap/families.hpp"
#include "glap/roots.hpp"

namespace glap {

struct VerifyTableRow {
  std::string family;
  FamilySpec spec;
  /// nullopt = not applicable to this row.
  std::optional<bool> kind;
  std::optional<bool> signature;
  std::optional<bool> prolong_dims_match_oracle;
  std::optional<bool> semisimple;
  std::optional<bool> simple;
  std::optional<bool> module_class;
  /// Counterexample row only: dim g_1 >= 2.
  std::optional<bool> degree_one_nonzero;
  AnalysisReport report;
  std::string error;

  bool pass() const {
    if (!error.empty()) return false;
    for (const auto& c : {kind, signature, prolong_dims_match_oracle, semisimple, simple, module_class, degree_one_nonzero})
      if (c && !*c) return false;
    return true;
  }
};

/// Smallest instance of each family plus non-minimal (HC)_{2,1}, (HC')_{2,1},
/// (HH)_{1,2}, (BI)_3 and the counterexample.
inline std::vector<FamilySpec> verify_table_specs() {
  return {FamilySpec::hk(FamilyTag::HC, 1, 1),      FamilySpec::hk(FamilyTag::HC, 2, 1),
          FamilySpec::hk(FamilyTag::HCsplit, 1, 1), FamilySpec::hk(FamilyTag::HCsplit, 2, 1),
          FamilySpec::hk(FamilyTag::HH, 1, 1),      FamilySpec::hk(FamilyTag::HH, 1, 2),
          FamilySpec::hk(FamilyTag::HHsplit, 1, 1), FamilySpec::bi(2),
          FamilySpec::bi(3),                        FamilySpec::simple(FamilyTag::HO),
          FamilySpec::simple(FamilyTag::HOsplit),   FamilySpec::simple(FamilyTag::G),
          FamilySpec::simple(FamilyTag::Counterexample)};
}

inline VerifyTableRow verify_row(const FamilySpec& spec) {
  VerifyTableRow row;
  row.spec = spec;
  row.family = spec.label();
  try {
    const auto b = build_family(spec);
    const auto p = full_prolongation(b.m, b.g);
    row.report = analyze(p);
    const auto& r = row.report;
    const int kind = check_fundamental(b.m).kind;
    if (spec.tag == FamilyTag::Counterexample) {
      row.kind = kind == 3;
      row.signature = r.r == 2 && r.s == 2;
      row.semisimple = !r.semisimple;
      row.degree_one_nonzero = p.full.indices_of_degree(1).size() >= 2;
      return row;
    }
    const auto e = table_expectation(spec);
    row.kind = kind == e.kind && kind == b.expected_kind;
    row.signature = r.r == e.r && r.s == e.s;
    row.prolong_dims_match_oracle = r.dims == e.dims;
    row.semisimple = r.semisimple;
    row.simple = r.simple;
    row.module_class = r.module_class == e.module_class;
  } catch (const std::exception& ex) {
    row.error = ex.what();
  }
  return row;
}

inline std::vector<VerifyTableRow> verify_table(const std::vector<FamilySpec>& specs = verify_table_specs()) {
  std::vector<VerifyTableRow> out;
  for (const auto& s : specs) out.push_back(verify_row(s));
  return out;
}

inline nlohmann::json to_json(const VerifyTableRow& row) {
  auto opt = [](const std::optional<bool>& b) { return b ? nlohmann::json(*b) : nlohmann::json(); };
  nlohmann::json params = nlohmann::json::object();
  if (row.spec.is_hk()) {
    params["p"] = row.spec.p;
    params["q"] = row.spec.q;
  } else if (row.spec.tag == FamilyTag::BI) {
    params["l"] = row.spec.l;
  }
  nlohmann::json checks{{"kind", opt(row.kind)},
                        {"signature", opt(row.signature)},
                        {"prolong_dims_match_oracle", opt(row.prolong_dims_match_oracle)},
                        {"semisimple", opt(row.semisimple)},
                        {"simple", opt(row.simple)},
                        {"module_class", opt(row.module_class)}};
  if (row.degree_one_nonzero) checks["degree_one_nonzero"] = *row.degree_one_nonzero;
  nlohmann::json j{{"family", row.family}, {"params", params}, {"checks", checks}, {"pass", row.pass()}};
  if (row.error.empty())
    j["report"] = to_json(row.report);
  else
    j["error"] = row.error;
  return j;
}

/// One line per row: PASS/FAIL, label, signature, module class.
inline std::string summary_line(const VerifyTableRow& row) {
  std::string s = std::string(row.pass() ? "PASS " : "FAIL ") + row.family;
  if (!row.error.empty()) return s + " error: " + row.error;
  const auto& r = row.report;
  std::size_t total = 0;
  for (const auto& [d, n] : r.dims) total += n;
  s += " dim=" + std::to_string(total) + " kind=" + std::to_string(r.kind) + " signature=(" + std::to_string(r.r) +
       "," + std::to_string(r.s) + ") class=" + to_string(r.module_class) +
       " semisimple=" + (r.semisimple ? "true" : "false") + " simple=" + (r.simple ? "true" : "false");
  return s;
}

}  // namespace glap
