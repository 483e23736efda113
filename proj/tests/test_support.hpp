#pragma once

// Shared fixtures for the unit tests.

#include <random>

#include "glap/graded_algebra.hpp"
#include "glap/matrix.hpp"

namespace test_support {

/// Product of random integer elementary matrices; determinant 1.
inline glap::RationalMatrix random_unimodular(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> idx(0, static_cast<int>(n) - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto p = glap::RationalMatrix::identity(n);
  if (n < 2) return p;
  for (int k = 0; k < 6; ++k) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t r = 0; r < n; ++r)
      p(r, static_cast<std::size_t>(j)) += c * p(r, static_cast<std::size_t>(i));
  }
  return p;
}

/// Heisenberg algebra: [x, y] = z with x, y in degree -1, z in degree -2.
inline glap::GradedAlgebra heisenberg() {
  return glap::GradedAlgebra("h3", {"x", "y", "z"}, {-1, -1, -2}, {{0, 1, {{2, 1}}}});
}

/// Euclidean form on the degree -1 part of the Heisenberg algebra.
inline glap::SymBilinearForm heisenberg_form() {
  return glap::SymBilinearForm::on(heisenberg(), glap::RationalMatrix{{1, 0}, {0, 1}});
}

/// Free 2-step nilpotent algebra on 3 generators.
inline glap::GradedAlgebra free_2step_3() {
  return glap::GradedAlgebra("n33", {"x1", "x2", "x3", "y12", "y13", "y23"}, {-1, -1, -1, -2, -2, -2},
                             {{0, 1, {{3, 1}}}, {0, 2, {{4, 1}}}, {1, 2, {{5, 1}}}});
}

}  // namespace test_support
