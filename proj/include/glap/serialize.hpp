#pragma once

// JSON file formats for algebras and forms.
//
// Algebra: {"name", "labels", "degrees", "brackets": [[i, j, [[k, "num/den"], ...]], ...]}
// Form:    {"algebra", "degree_minus1_indices", "matrix": [["num/den", ...], ...]}

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "glap/graded_algebra.hpp"
#include "glap/rational.hpp"

namespace glap {

using json = nlohmann::json;

inline json to_json(const GradedAlgebra& a) {
  json brackets = json::array();
  for (const auto& e : a.entries()) {
    json comps = json::array();
    for (const auto& [k, x] : e.value) comps.push_back(json::array({k, to_string(x)}));
    brackets.push_back(json::array({e.i, e.j, comps}));
  }
  return json{{"name", a.name()}, {"labels", a.labels()}, {"degrees", a.degrees()}, {"brackets", brackets}};
}

inline json to_json(const SymBilinearForm& g) {
  json rows = json::array();
  for (std::size_t r = 0; r < g.matrix().rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < g.matrix().cols(); ++c) row.push_back(to_string(g.matrix()(r, c)));
    rows.push_back(row);
  }
  return json{{"algebra", g.algebra()}, {"degree_minus1_indices", g.indices()}, {"matrix", rows}};
}

namespace detail {

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw ParseError("expected a rational string \"num/den\"");
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

/// Parses text and reports syntax errors with line and column.
inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + e.what());
  }
}

}  // namespace detail

inline GradedAlgebra algebra_from_json(const json& j) {
  try {
    auto name = detail::field(j, "name").get<std::string>();
    auto labels = detail::field(j, "labels").get<std::vector<std::string>>();
    auto degrees = detail::field(j, "degrees").get<std::vector<int>>();
    std::vector<BracketEntry> entries;
    std::size_t pos = 0;
    for (const auto& b : detail::field(j, "brackets")) {
      if (!b.is_array() || b.size() != 3)
        throw ParseError("bracket entry " + std::to_string(pos) + " is not [i, j, components]");
      BracketEntry e{b[0].get<int>(), b[1].get<int>(), {}};
      if (e.i >= e.j) throw ParseError("bracket entry " + std::to_string(pos) + " must have i < j");
      for (const auto& c : b[2]) {
        if (!c.is_array() || c.size() != 2)
          throw ParseError("bracket entry " + std::to_string(pos) + " has a malformed component");
        e.value.emplace_back(c[0].get<int>(), detail::rational_from_json(c[1]));
      }
      entries.push_back(std::move(e));
      ++pos;
    }
    return GradedAlgebra(std::move(name), std::move(labels), std::move(degrees), entries);
  } catch (const json::exception& e) {
    throw ParseError(std::string("algebra file: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("algebra file: ") + e.what());
  }
}

inline SymBilinearForm form_from_json(const json& j) {
  try {
    auto name = detail::field(j, "algebra").get<std::string>();
    auto indices = detail::field(j, "degree_minus1_indices").get<std::vector<std::size_t>>();
    const auto& rows = detail::field(j, "matrix");
    RationalMatrix m(rows.size(), rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != rows.size()) throw ParseError("form matrix row " + std::to_string(r) + " has wrong length");
      for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = detail::rational_from_json(rows[r][c]);
    }
    return SymBilinearForm(std::move(name), std::move(indices), std::move(m));
  } catch (const json::exception& e) {
    throw ParseError(std::string("form file: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("form file: ") + e.what());
  }
}

inline std::string serialize(const GradedAlgebra& a) { return to_json(a).dump(); }
inline GradedAlgebra deserialize_algebra(const std::string& text) {
  return algebra_from_json(detail::parse_text(text));
}
inline std::string serialize(const SymBilinearForm& g) { return to_json(g).dump(); }
inline SymBilinearForm deserialize_form(const std::string& text) { return form_from_json(detail::parse_text(text)); }

}  // namespace glap
