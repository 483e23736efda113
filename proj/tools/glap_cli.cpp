// glap: command-line front end. Exit codes: 0 success, 1 check or
// verification failure, 2 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glap/glap.hpp"

namespace {

using glap::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text << "\n";
}

json dims_json(const std::map<int, std::size_t>& dims) {
  json j = json::object();
  for (const auto& [d, n] : dims) j[std::to_string(d)] = n;
  return j;
}

struct FamilyArgs {
  std::string family;
  std::optional<int> p, q, l;
};

glap::FamilySpec spec_from(const FamilyArgs& a) {
  const auto tag = glap::family_tag_from_cli(a.family);
  switch (tag) {
    case glap::FamilyTag::HC:
    case glap::FamilyTag::HCsplit:
    case glap::FamilyTag::HH:
    case glap::FamilyTag::HHsplit:
      if (!a.p || !a.q) throw glap::BadParameters("family '" + a.family + "' requires --p and --q");
      return glap::FamilySpec::hk(tag, *a.p, *a.q);
    case glap::FamilyTag::BI:
      if (!a.l) throw glap::BadParameters("family 'bi' requires --l");
      return glap::FamilySpec::bi(*a.l);
    default:
      return glap::FamilySpec::simple(tag);
  }
}

int cmd_build(const FamilyArgs& args, const std::string& out_dir) {
  const auto spec = spec_from(args);
  spec.validate();
  const auto b = glap::build_family(spec);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  json files{{"m", (dir / "m.json").string()}, {"g", (dir / "g.json").string()}};
  write_file(dir / "m.json", glap::serialize(b.m));
  write_file(dir / "g.json", glap::serialize(b.g));
  if (b.ambient) {
    write_file(dir / "ambient.json", glap::serialize(*b.ambient));
    files["ambient"] = (dir / "ambient.json").string();
  }
  auto sig = b.g.signature();
  std::cout << json{{"family", spec.label()},
                    {"files", files},
                    {"dims", dims_json(glap::dims_by_degree(b.m))},
                    {"signature", {sig.positive, sig.negative}}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_check(const std::string& path) {
  const auto a = glap::deserialize_algebra(read_file(path));
  const auto report = glap::check_gla(a);
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(v.describe(a));
  json out{{"grading_ok", report.grading_ok}, {"jacobi_ok", report.jacobi_ok}, {"violations", violations}};
  bool clean = report.ok();
  if (a.max_degree() < 0) {
    auto f = glap::check_fundamental(a);
    out["fundamental"] = f.is_fgla;
    out["kind"] = f.kind;
    clean = clean && f.is_fgla;
  } else {
    out["fundamental"] = nullptr;
  }
  std::cout << out.dump() << "\n";
  return clean ? 0 : 1;
}

int cmd_derivations(const std::string& m_path, const std::string& g_path) {
  const auto m = glap::deserialize_algebra(read_file(m_path));
  const auto g = glap::deserialize_form(read_file(g_path));
  const auto d = glap::conformal_g0(m, g);
  const auto split = glap::characteristic_split(d);
  json eta = json::array();
  for (const auto& e : d.eta) eta.push_back(glap::to_string(e));
  json elements = json::array();
  for (const auto& x : d.elements) {
    json rows = json::array();
    for (std::size_t r = 0; r < x.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < x.cols(); ++c) row.push_back(glap::to_string(x(r, c)));
      rows.push_back(row);
    }
    elements.push_back(rows);
  }
  std::cout << json{{"dim", d.size()},
                    {"eta", eta},
                    {"eta_of_characteristic", glap::to_string(split.eta_of_characteristic)},
                    {"kernel_dim", split.hat_g0.size()},
                    {"elements", elements}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_prolong(const std::string& m_path, const std::string& g_path, const std::string& out_path, int step_limit) {
  const auto m = glap::deserialize_algebra(read_file(m_path));
  const auto g = glap::deserialize_form(read_file(g_path));
  const auto p = glap::full_prolongation(m, g, step_limit);
  write_file(out_path, glap::serialize(p));
  std::cout << json{{"out", out_path}, {"dims", dims_json(p.step_dims)}, {"total", p.full.dim()}}.dump() << "\n";
  return 0;
}

int cmd_analyze(const std::string& path) {
  const auto p = glap::deserialize_prolongation(read_file(path));
  std::cout << glap::to_json(glap::analyze(p)).dump() << "\n";
  return 0;
}

int cmd_oracle(const std::string& type, int rank, const std::vector<int>& crossed) {
  const auto rs = glap::positive_roots(type, rank);
  std::cout << dims_json(glap::graded_dims(rs, crossed).dims).dump() << "\n";
  return 0;
}

int cmd_verify_table(bool summary) {
  const auto rows = glap::verify_table();
  bool ok = true;
  json out = json::array();
  for (const auto& r : rows) {
    ok = ok && r.pass();
    if (summary)
      std::cout << glap::summary_line(r) << "\n";
    else
      out.push_back(glap::to_json(r));
  }
  if (!summary) std::cout << out.dump() << "\n";
  if (!ok) {
    std::cerr << "failing rows:";
    for (const auto& r : rows)
      if (!r.pass()) std::cerr << " " << r.family;
    std::cerr << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded Lie algebras of conformal pseudo-subriemannian type"};
  app.require_subcommand(1);

  FamilyArgs fam;
  std::string out_dir = ".";
  auto* build = app.add_subcommand("build", "build a family: writes m.json, g.json and ambient.json");
  build->add_option("--family", fam.family, "hc, hc-split, hh, hh-split, ho, ho-split, bi, g2, counterexample")
      ->required();
  build->add_option("--p", fam.p);
  build->add_option("--q", fam.q);
  build->add_option("--l", fam.l);
  build->add_option("--out", out_dir, "output directory");

  std::string check_path;
  auto* check = app.add_subcommand("check", "check grading, Jacobi and generation by degree -1");
  check->add_option("file", check_path)->required();

  std::string m_path, g_path;
  auto* derivations = app.add_subcommand("derivations", "conformal degree-0 derivations of (m, g)");
  derivations->add_option("--m", m_path)->required();
  derivations->add_option("--g", g_path)->required();

  std::string prol_out = "prolongation.json";
  int max_degree = glap::kDefaultStepLimit;
  auto* prolong = app.add_subcommand("prolong", "full prolongation of (m, g)");
  prolong->add_option("--m", m_path)->required();
  prolong->add_option("--g", g_path)->required();
  prolong->add_option("--out", prol_out);
  auto* max_degree_opt = prolong->add_option("--max-degree", max_degree, "step cap (default 64, or GLAP_STEP_LIMIT)");

  std::string analyze_path;
  auto* analyze = app.add_subcommand("analyze", "analysis report of a prolongation file");
  analyze->add_option("file", analyze_path)->required();

  std::string type;
  int rank = 0;
  std::vector<int> crossed;
  auto* oracle = app.add_subcommand("oracle", "graded dimensions from a root system");
  oracle->add_option("--type", type)->required();
  oracle->add_option("--rank", rank)->required();
  oracle->add_option("--crossed", crossed)->required();

  bool summary = false;
  auto* verify = app.add_subcommand("verify-table", "reproduce the classification table");
  verify->add_flag("--summary", summary, "one line per row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build(fam, out_dir);
    if (*check) return cmd_check(check_path);
    if (*derivations) return cmd_derivations(m_path, g_path);
    if (*prolong) {
      int limit = max_degree_opt->count() ? max_degree : glap::default_step_limit();
      if (limit < 1) throw InputError("--max-degree must be positive");
      return cmd_prolong(m_path, g_path, prol_out, limit);
    }
    if (*analyze) return cmd_analyze(analyze_path);
    if (*oracle) return cmd_oracle(type, rank, crossed);
    if (*verify) return cmd_verify_table(summary);
  } catch (const glap::StepLimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const glap::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
