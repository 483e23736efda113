#include <random>

#include <gtest/gtest.h>

#include "glap/graded_algebra.hpp"
#include "glap/serialize.hpp"
#include "test_support.hpp"

using namespace glap;

TEST(BracketEval, HeisenbergRelations) {
  auto h = test_support::heisenberg();
  EXPECT_EQ(bracket_eval(h, unit_vector(3, 0), unit_vector(3, 1)), unit_vector(3, 2));
  EXPECT_EQ(bracket_eval(h, Vector{1, 1, 0}, Vector{1, -1, 0}), (Vector{0, 0, -2}));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int t = 0; t < 10; ++t) {
    Vector x{d(rng), d(rng), d(rng)};
    EXPECT_TRUE(is_zero(bracket_eval(h, x, x)));
  }
  EXPECT_THROW(bracket_eval(h, Vector{1, 0}, Vector{0, 1, 0}), DimensionMismatch);
}

TEST(GradedAlgebra, ConstructorValidatesEntries) {
  EXPECT_THROW(GradedAlgebra("x", {"a", "b"}, {-1, -1}, {{0, 2, {}}}), std::out_of_range);
  EXPECT_THROW(GradedAlgebra("x", {"a", "b"}, {-1, -1}, {{0, 0, {}}}), std::invalid_argument);
  EXPECT_THROW(GradedAlgebra("x", {"a", "b"}, {-1, -1}, {{0, 1, {}}, {1, 0, {}}}), std::invalid_argument);
  EXPECT_THROW(GradedAlgebra("x", {"a"}, {-1, -1}, {}), DimensionMismatch);
}

TEST(CheckGla, HeisenbergIsClean) {
  auto r = check_gla(test_support::heisenberg());
  EXPECT_TRUE(r.grading_ok);
  EXPECT_TRUE(r.jacobi_ok);
  EXPECT_TRUE(r.violations.empty());
}

TEST(CheckGla, ReportsGradingViolation) {
  GradedAlgebra bad("h3bad", {"x", "y", "z"}, {-1, -1, -2}, {{0, 1, {{2, 1}}}, {0, 2, {{0, 1}}}});
  auto r = check_gla(bad);
  EXPECT_FALSE(r.grading_ok);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().kind, GlaViolation::Kind::Grading);
  EXPECT_EQ(r.violations.front().i, 0u);
  EXPECT_EQ(r.violations.front().j, 2u);
}

TEST(CheckGla, ReportsJacobiViolation) {
  // [a,b]=c, [a,c]=d, [b,d]=a: the Jacobi sum on (a,b,c) is nonzero.
  GradedAlgebra bad("j4", {"a", "b", "c", "d"}, {0, 0, 0, 0}, {{0, 1, {{2, 1}}}, {0, 2, {{3, 1}}}, {1, 3, {{0, 1}}}});
  auto r = check_gla(bad);
  EXPECT_TRUE(r.grading_ok);
  EXPECT_FALSE(r.jacobi_ok);
  bool abc = false;
  for (const auto& v : r.violations)
    if (v.kind == GlaViolation::Kind::Jacobi && v.i == 0 && v.j == 1 && v.k == 2) abc = true;
  EXPECT_TRUE(abc);
}

TEST(CheckFundamental, Examples) {
  auto h = check_fundamental(test_support::heisenberg());
  EXPECT_TRUE(h.is_fgla);
  EXPECT_EQ(h.kind, 2);
  GradedAlgebra abelian("ab", {"x", "z"}, {-1, -2}, {});
  auto a = check_fundamental(abelian);
  EXPECT_FALSE(a.is_fgla);
  EXPECT_EQ(a.kind, 2);
  GradedAlgebra with_zero("z", {"x", "e"}, {-1, 0}, {});
  EXPECT_THROW(check_fundamental(with_zero), NonNegativeDegreePresent);
}

TEST(DimsByDegree, SumsToDimension) {
  auto d = dims_by_degree(test_support::free_2step_3());
  EXPECT_EQ(d.at(-1), 3u);
  EXPECT_EQ(d.at(-2), 3u);
  auto h = dims_by_degree(test_support::heisenberg());
  EXPECT_EQ(h, (std::map<int, std::size_t>{{-2, 1}, {-1, 2}}));
}

TEST(SymBilinearForm, Validation) {
  auto h = test_support::heisenberg();
  EXPECT_THROW(SymBilinearForm::on(h, RationalMatrix{{1, 2}, {0, 1}}), NotSymmetric);
  EXPECT_THROW(SymBilinearForm::on(h, RationalMatrix{{1, 1}, {1, 1}}), DegenerateForm);
  EXPECT_THROW(SymBilinearForm::on(h, RationalMatrix{{1}}), DimensionMismatch);
  auto g = SymBilinearForm::on(h, RationalMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(g.signature(), (Signature{1, 1, 0}));
  EXPECT_EQ(g.scaled(-1).signature(), (Signature{1, 1, 0}));
}

TEST(Serialize, AlgebraRoundTrip) {
  auto a = test_support::free_2step_3();
  auto b = deserialize_algebra(serialize(a));
  EXPECT_EQ(a, b);
  GradedAlgebra frac("f", {"x", "y", "z"}, {-1, -1, -2}, {{0, 1, {{2, Rational(-3, 7)}}}});
  EXPECT_EQ(deserialize_algebra(serialize(frac)), frac);
}

TEST(Serialize, FormRoundTrip) {
  auto g = SymBilinearForm::on(test_support::heisenberg(), RationalMatrix{{Rational(1, 2), 1}, {1, -3}});
  EXPECT_EQ(deserialize_form(serialize(g)), g);
}

TEST(Serialize, RationalStringsOmitUnitDenominator) {
  auto j = to_json(test_support::heisenberg());
  EXPECT_EQ(j["brackets"][0][2][0][1], "1");
}

TEST(Serialize, SyntaxErrorReportsPosition) {
  try {
    deserialize_algebra("{\n  \"name\": \"x\",\n  oops\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  }
}

TEST(Serialize, StructuralErrors) {
  EXPECT_THROW(deserialize_algebra(R"({"name":"x","labels":["a"],"degrees":[-1]})"), ParseError);
  EXPECT_THROW(deserialize_algebra(R"({"name":"x","labels":["a","b"],"degrees":[-1,-1],"brackets":[[1,0,[]]]})"),
               ParseError);
  EXPECT_THROW(
      deserialize_algebra(R"({"name":"x","labels":["a","b"],"degrees":[-1,-1],"brackets":[[0,1,[[0,"1/0"]]]]})"),
      ParseError);
  EXPECT_THROW(deserialize_form(R"({"algebra":"x","degree_minus1_indices":[0],"matrix":[["1","2"]]})"),
               ParseError);
}
