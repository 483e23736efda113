#include <gtest/gtest.h>

#include "glap/roots.hpp"

using namespace glap;

namespace {

using Dims = std::map<int, std::size_t>;

std::size_t total(const Dims& d) {
  std::size_t s = 0;
  for (const auto& [p, n] : d) s += n;
  return s;
}

}  // namespace

TEST(RootSystem, A2) {
  auto rs = positive_roots("A", 2);
  EXPECT_EQ(rs.positive_roots, (std::vector<Root>{{0, 1}, {1, 0}, {1, 1}}));
}

TEST(RootSystem, G2HighestRoot) {
  auto rs = positive_roots("G2", 2);
  EXPECT_EQ(rs.positive_roots.size(), 6u);
  EXPECT_EQ(rs.highest_root(), (Root{3, 2}));
  EXPECT_EQ(rs.cartan, (std::vector<std::vector<int>>{{2, -1}, {-3, 2}}));
}

TEST(RootSystem, F4) {
  auto rs = positive_roots("F4", 4);
  EXPECT_EQ(rs.positive_roots.size(), 24u);
  EXPECT_EQ(rs.highest_root(), (Root{2, 3, 4, 2}));
  EXPECT_EQ(rs.dimension(), 52u);
}

TEST(RootSystem, ClassicalCounts) {
  for (int l = 1; l <= 8; ++l) EXPECT_EQ(positive_roots("A", l).positive_roots.size(), std::size_t(l * (l + 1) / 2));
  for (int l = 2; l <= 8; ++l) {
    EXPECT_EQ(positive_roots("B", l).positive_roots.size(), std::size_t(l * l));
    EXPECT_EQ(positive_roots("C", l).positive_roots.size(), std::size_t(l * l));
    EXPECT_EQ(positive_roots("C", l).dimension(), std::size_t(l * (2 * l + 1)));
  }
  for (int l = 4; l <= 7; ++l) EXPECT_EQ(positive_roots("D", l).positive_roots.size(), std::size_t(l * (l - 1)));
  EXPECT_EQ(positive_roots("B", 3).highest_root(), (Root{1, 2, 2}));
  EXPECT_EQ(positive_roots("C", 3).highest_root(), (Root{2, 2, 1}));
}

TEST(RootSystem, UnsupportedTypes) {
  EXPECT_THROW(positive_roots("E", 6), UnsupportedType);
  EXPECT_THROW(positive_roots("F4", 3), UnsupportedType);
  EXPECT_THROW(positive_roots("B", 1), UnsupportedType);
  EXPECT_THROW(positive_roots("A", 0), UnsupportedType);
}

TEST(GradedDims, A2BothNodes) {
  auto g = graded_dims(positive_roots("A", 2), {1, 2});
  EXPECT_EQ(g.dims, (Dims{{-2, 1}, {-1, 2}, {0, 2}, {1, 2}, {2, 1}}));
  EXPECT_EQ(g.minus1_components, (std::map<int, std::size_t>{{1, 1}, {2, 1}}));
  EXPECT_EQ(g.kind, 2);
}

TEST(GradedDims, F4Node4) {
  auto g = graded_dims(positive_roots("F4", 4), {4});
  EXPECT_EQ(g.dims, (Dims{{-2, 7}, {-1, 8}, {0, 22}, {1, 8}, {2, 7}}));
}

TEST(GradedDims, G2BothNodes) {
  auto g = graded_dims(positive_roots("G2", 2), {1, 2});
  Dims expected{{0, 2}};
  for (int p = 1; p <= 5; ++p) expected[p] = expected[-p] = (p == 1 ? 2 : 1);
  EXPECT_EQ(g.dims, expected);
  EXPECT_EQ(g.kind, 5);
}

TEST(GradedDims, B3EndNodesHasKindThree) {
  auto g = graded_dims(positive_roots("B", 3), {1, 3});
  EXPECT_EQ(g.dims, (Dims{{-3, 2}, {-2, 2}, {-1, 4}, {0, 5}, {1, 4}, {2, 2}, {3, 2}}));
  EXPECT_EQ(g.kind, 3);
}

TEST(GradedDims, Validation) {
  auto rs = positive_roots("A", 3);
  EXPECT_THROW(graded_dims(rs, {}), std::invalid_argument);
  EXPECT_THROW(graded_dims(rs, {4}), std::invalid_argument);
}

TEST(GradedDimsProperty, SymmetricAndSumToDimension) {
  const std::vector<std::pair<std::string, int>> systems{{"A", 2}, {"A", 5}, {"B", 3}, {"B", 6}, {"C", 3},
                                                         {"C", 6}, {"D", 5}, {"F4", 4}, {"G2", 2}};
  for (const auto& [type, l] : systems) {
    auto rs = positive_roots(type, l);
    for (int c = 1; c <= l; ++c) {
      auto g = graded_dims(rs, {c});
      EXPECT_EQ(total(g.dims), rs.dimension());
      for (const auto& [p, n] : g.dims) EXPECT_EQ(g.dims.at(-p), n);
      // kind equals the crossed coefficient of the highest root
      EXPECT_EQ(g.kind, rs.highest_root()[static_cast<std::size_t>(c - 1)]);
      for (const auto& r : rs.positive_roots) EXPECT_GE(r[static_cast<std::size_t>(c - 1)], 0);
    }
  }
}

TEST(TableExpectation, Rows) {
  auto hh = table_expectation(FamilySpec::hk(FamilyTag::HH, 1, 1));
  EXPECT_EQ(hh.type, "C");
  EXPECT_EQ(hh.rank, 3);
  EXPECT_EQ(hh.crossed, (std::vector<int>{2}));
  EXPECT_EQ(hh.dims.at(-2), 3u);
  EXPECT_EQ(hh.dims.at(-1), 4u);
  EXPECT_EQ(hh.dims.at(0), 7u);
  EXPECT_EQ(hh.r, 4);
  EXPECT_EQ(hh.s, 0);

  auto bi = table_expectation(FamilySpec::bi(3));
  EXPECT_EQ(bi.dims, (Dims{{-3, 2}, {-2, 2}, {-1, 4}, {0, 5}, {1, 4}, {2, 2}, {3, 2}}));

  auto hc = table_expectation(FamilySpec::hk(FamilyTag::HC, 2, 1));
  EXPECT_EQ(hc.type, "A");
  EXPECT_EQ(hc.rank, 4);
  EXPECT_EQ(hc.crossed, (std::vector<int>{1, 4}));
  EXPECT_EQ(hc.r, 4);
  EXPECT_EQ(hc.s, 2);
  EXPECT_EQ(hc.satake, "(AIIIa)_{4,2}");

  EXPECT_EQ(table_expectation(FamilySpec::hk(FamilyTag::HC, 1, 1)).satake, "(AIV)_2");
  EXPECT_EQ(table_expectation(FamilySpec::hk(FamilyTag::HC, 2, 0)).satake, "(AIIIb)_3");
  EXPECT_EQ(table_expectation(FamilySpec::hk(FamilyTag::HCsplit, 2, 1)).r, 3);
  EXPECT_EQ(table_expectation(FamilySpec::simple(FamilyTag::G)).kind, 5);
}

TEST(TableExpectation, BadParameters) {
  EXPECT_THROW(table_expectation(FamilySpec::hk(FamilyTag::HC, 0, 3)), BadParameters);
  EXPECT_THROW(table_expectation(FamilySpec::hk(FamilyTag::HH, 1, 0)), BadParameters);
  EXPECT_THROW(table_expectation(FamilySpec::hk(FamilyTag::HH, 1, -1)), BadParameters);
  EXPECT_THROW(table_expectation(FamilySpec::bi(1)), BadParameters);
  EXPECT_THROW(table_expectation(FamilySpec::bi(7)), BadParameters);
  EXPECT_THROW(table_expectation(FamilySpec::simple(FamilyTag::Counterexample)), BadParameters);
}

TEST(TableExpectation, MatchRow) {
  auto e = table_expectation(FamilySpec::hk(FamilyTag::HC, 1, 1));
  auto label = match_table_row(e.dims, 2, 0, ModuleClass::SII);
  ASSERT_TRUE(label.has_value());
  EXPECT_EQ(*label, "(HC)_{1,1}: ((AIV)_2,{a1,a2})");
  EXPECT_EQ(match_table_row(e.dims, 0, 2, ModuleClass::SII), label);
  EXPECT_FALSE(match_table_row(e.dims, 1, 1, ModuleClass::SII).has_value());
}
