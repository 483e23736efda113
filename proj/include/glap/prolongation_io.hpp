#pragma once

// Prolongation file: the algebra format plus "step_dims" and the "form" on m.

#include <algorithm>
#include <string>

#include "glap/prolongation.hpp"
#include "glap/serialize.hpp"

namespace glap {

inline json to_json(const ProlongationResult& p) {
  json j = to_json(p.full);
  json steps = json::object();
  for (const auto& [d, n] : p.step_dims) steps[std::to_string(d)] = n;
  j["step_dims"] = steps;
  j["form"] = to_json(p.form);
  return j;
}

inline ProlongationResult prolongation_from_json(const json& j) {
  ProlongationResult p;
  p.full = algebra_from_json(j);
  p.form = form_from_json(detail::field(j, "form"));
  const auto& steps = detail::field(j, "step_dims");
  if (!steps.is_object()) throw ParseError("'step_dims' must be an object");
  for (const auto& [k, v] : steps.items()) {
    try {
      p.step_dims[std::stoi(k)] = v.get<std::size_t>();
    } catch (const std::exception&) {
      throw ParseError("bad 'step_dims' entry '" + k + "'");
    }
  }
  p.boundary = p.full.max_degree();
  p.negative_dim = p.full.negative_indices().size();
  for (auto i : p.form.indices())
    if (i >= p.full.dim() || p.full.degree(i) != -1) throw ParseError("form indices do not select degree -1 elements");
  return p;
}

inline std::string serialize(const ProlongationResult& p) { return to_json(p).dump(); }
inline ProlongationResult deserialize_prolongation(const std::string& text) {
  return prolongation_from_json(detail::parse_text(text));
}

}  // namespace glap
