#pragma once

// Family tags and parameter validation for the conformal pseudo-subriemannian
// families (HK)_{p,q}, (BI)_l, (HO), (HO'), (G) and the non-semisimple
// counterexample.

#include <stdexcept>
#include <string>

namespace glap {

class BadParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FamilyTag { HC, HCsplit, HH, HHsplit, HO, HOsplit, BI, G, Counterexample };

/// Desk-scale caps on family parameters.
inline constexpr int kMaxMatrixSize = 8;
inline constexpr int kMaxBIRank = 6;

struct FamilySpec {
  FamilyTag tag = FamilyTag::HC;
  int p = 1;
  int q = 1;
  int l = 2;

  static FamilySpec hk(FamilyTag tag, int p, int q) { return {tag, p, q, 0}; }
  static FamilySpec bi(int l) { return {FamilyTag::BI, 0, 0, l}; }
  static FamilySpec simple(FamilyTag tag) { return {tag, 0, 0, 0}; }

  bool is_hk() const {
    return tag == FamilyTag::HC || tag == FamilyTag::HCsplit || tag == FamilyTag::HH || tag == FamilyTag::HHsplit;
  }

  /// Composition algebra tag for matrix and octonionic families.
  std::string algebra_tag() const {
    switch (tag) {
      case FamilyTag::HC: return "C";
      case FamilyTag::HCsplit: return "C'";
      case FamilyTag::HH: return "H";
      case FamilyTag::HHsplit: return "H'";
      case FamilyTag::HO: return "O";
      case FamilyTag::HOsplit: return "O'";
      default: return "";
    }
  }

  /// Throws BadParameters naming the violated range.
  void validate() const {
    if (is_hk()) {
      if (p < 1) throw BadParameters("p >= 1 required (got p=" + std::to_string(p) + ")");
      if (q < 0) throw BadParameters("q >= 0 required (got q=" + std::to_string(q) + ")");
      if (2 * p + q < 3) throw BadParameters("2p+q >= 3 required (got " + std::to_string(2 * p + q) + ")");
      if (2 * p + q > kMaxMatrixSize)
        throw BadParameters("2p+q <= " + std::to_string(kMaxMatrixSize) + " required (got " +
                            std::to_string(2 * p + q) + ")");
    } else if (tag == FamilyTag::BI) {
      if (l < 2) throw BadParameters("l >= 2 required (got l=" + std::to_string(l) + ")");
      if (l > kMaxBIRank)
        throw BadParameters("l <= " + std::to_string(kMaxBIRank) + " required (got l=" + std::to_string(l) + ")");
    }
  }

  std::string label() const {
    switch (tag) {
      case FamilyTag::HC: return "(HC)_{" + std::to_string(p) + "," + std::to_string(q) + "}";
      case FamilyTag::HCsplit: return "(HC')_{" + std::to_string(p) + "," + std::to_string(q) + "}";
      case FamilyTag::HH: return "(HH)_{" + std::to_string(p) + "," + std::to_string(q) + "}";
      case FamilyTag::HHsplit: return "(HH')_{" + std::to_string(p) + "," + std::to_string(q) + "}";
      case FamilyTag::HO: return "(HO)";
      case FamilyTag::HOsplit: return "(HO')";
      case FamilyTag::BI: return "(BI)_" + std::to_string(l);
      case FamilyTag::G: return "(G)";
      case FamilyTag::Counterexample: return "counterexample";
    }
    return "";
  }

  /// CLI family tag.
  std::string cli_tag() const {
    switch (tag) {
      case FamilyTag::HC: return "hc";
      case FamilyTag::HCsplit: return "hc-split";
      case FamilyTag::HH: return "hh";
      case FamilyTag::HHsplit: return "hh-split";
      case FamilyTag::HO: return "ho";
      case FamilyTag::HOsplit: return "ho-split";
      case FamilyTag::BI: return "bi";
      case FamilyTag::G: return "g2";
      case FamilyTag::Counterexample: return "counterexample";
    }
    return "";
  }
};

inline FamilyTag family_tag_from_cli(const std::string& s) {
  if (s == "hc") return FamilyTag::HC;
  if (s == "hc-split") return FamilyTag::HCsplit;
  if (s == "hh") return FamilyTag::HH;
  if (s == "hh-split") return FamilyTag::HHsplit;
  if (s == "ho") return FamilyTag::HO;
  if (s == "ho-split") return FamilyTag::HOsplit;
  if (s == "bi") return FamilyTag::BI;
  if (s == "g2") return FamilyTag::G;
  if (s == "counterexample") return FamilyTag::Counterexample;
  throw BadParameters("unknown family '" + s + "'");
}

enum class ModuleClass { SI, SII, SIII, Unclassified };

inline std::string to_string(ModuleClass c) {
  switch (c) {
    case ModuleClass::SI: return "SI";
    case ModuleClass::SII: return "SII";
    case ModuleClass::SIII: return "SIII";
    case ModuleClass::Unclassified: return "unclassified";
  }
  return "unclassified";
}

}  // namespace glap
