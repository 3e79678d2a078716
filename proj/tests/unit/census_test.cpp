#include <gtest/gtest.h>

#include <numeric>

#include "lociso/ball.hpp"
#include "lociso/census.hpp"
#include "lociso/error.hpp"
#include "lociso/generators.hpp"
#include "oracles.hpp"

using namespace lociso;

namespace {

GridColoring plain_bw() { return GridColoring::none({"Black", "White"}); }

std::size_t multiplicity_sum(const CensusTable& t) {
  return std::accumulate(t.entries.begin(), t.entries.end(), std::size_t{0},
                         [](std::size_t s, const CensusEntry& e) { return s + e.multiplicity; });
}

}  // namespace

TEST(Census, UncoloredPathHasOneClass) {
  auto m = gen_grid({41}, false);
  auto t = census(m, 2);
  EXPECT_EQ(t.entries.size(), 1u);
  EXPECT_EQ(t.faithful_count, 37u);
  EXPECT_EQ(multiplicity_sum(t), t.faithful_count);
}

TEST(Census, CheckerboardLineHasTwoClasses) {
  auto m = gen_grid({41}, false, GridColoring::stripes({"Black", "White"}));
  EXPECT_EQ(census(m, 1).entries.size(), 2u);
}

TEST(Census, SturmianClassCountEqualsFactorCount) {
  const std::int64_t W = 10000;
  auto m = gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("0"), W);
  auto colors = oracle::window_colors(m, W);
  auto t = census(m, 3);
  EXPECT_EQ(t.entries.size(), oracle::factors(colors, 7).size());
  EXPECT_EQ(t.entries.size(), 8u);  // Sturmian complexity n + 1
  EXPECT_EQ(multiplicity_sum(t), t.faithful_count);
  EXPECT_EQ(t.faithful_count, static_cast<std::size_t>(2 * W + 1 - 6));
}

TEST(Census, RepresentativesAreLeastIdAndClassesConsistent) {
  auto m = gen_grid({9, 9}, false, GridColoring::checkerboard(2));
  auto t = census(m, 1);
  ASSERT_EQ(t.entries.size(), 2u);
  for (std::size_t k = 0; k < t.entries.size(); ++k) {
    std::optional<ElementId> least;
    for (ElementId e = 0; e < m.size(); ++e)
      if (t.class_of[e] == static_cast<std::int32_t>(k) && (!least || m.id(e) < m.id(*least))) least = e;
    EXPECT_EQ(t.entries[k].representative, *least);
  }
  for (ElementId e = 0; e < m.size(); ++e) EXPECT_EQ(t.class_of[e] >= 0, m.depth(e) >= 1);
}

TEST(Census, NoFaithfulElementsThrows) {
  auto m = gen_grid({5}, false);
  try {
    census(m, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoFaithfulElements);
  }
}

TEST(Lip, UncoloredPathHasKZero) {
  auto m = gen_grid({61}, false);
  for (std::uint32_t h : {0u, 2u, 5u}) {
    auto r = lip_check(m, h);
    EXPECT_EQ(r.verdict, Verdict::HoldsUpToBounds);
    EXPECT_EQ(r.k, 0u);
  }
}

TEST(Lip, SturmianKIsFiniteAndScanConfirmsIt) {
  auto m = gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("0"), 2000);
  const std::uint32_t h = 1;
  auto table = census(m, h);
  auto r = lip_check(m, table);
  ASSERT_EQ(r.verdict, Verdict::HoldsUpToBounds);
  ASSERT_TRUE(r.k.has_value());
  const std::uint32_t k = *r.k;
  // Direct scan: every faithful B(v, k) meets every class.
  for (ElementId v = 0; v < m.size(); ++v) {
    if (m.depth(v) < k + h) continue;
    auto dist = oracle::bfs(m, v);
    std::set<std::int32_t> seen;
    for (ElementId w = 0; w < m.size(); ++w)
      if (dist[w] <= k && table.class_of[w] >= 0) seen.insert(table.class_of[w]);
    ASSERT_EQ(seen.size(), table.entries.size()) << m.id(v);
  }
  // And k is least: some v misses a class at k - 1.
  if (k > 0) {
    bool some_miss = false;
    for (ElementId v = 0; v < m.size() && !some_miss; ++v) {
      if (m.depth(v) < k + h) continue;
      auto dist = oracle::bfs(m, v);
      std::set<std::int32_t> seen;
      for (ElementId w = 0; w < m.size(); ++w)
        if (dist[w] <= k - 1 && table.class_of[w] >= 0) seen.insert(table.class_of[w]);
      some_miss = seen.size() < table.entries.size();
    }
    EXPECT_TRUE(some_miss);
  }
}

TEST(Lip, SingleMarkedCellNeverRecurs) {
  auto coloring = GridColoring::stripes({"White"});
  coloring.origin_color = "Black";
  coloring.palette = {"Black", "White"};
  auto m = gen_grid({41}, false, coloring);
  auto r = lip_check(m, 0);
  EXPECT_EQ(r.verdict, Verdict::FailsWithWitness);
  bool black_class_fails = false;
  for (const auto& c : r.classes)
    if (!c.within_bound) {
      black_class_fails |= m.id(c.representative) == "0";
      ASSERT_TRUE(c.witness.has_value());
      EXPECT_GT(oracle::bfs(m, c.representative)[*c.witness], r.k_bound);
    }
  EXPECT_TRUE(black_class_fails);
}

TEST(Compare, StructureAgainstItself) {
  auto m = gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("1/4"), 500);
  auto r = extraction_compare(m, m, 4);
  EXPECT_TRUE(r.m_in_n);
  EXPECT_TRUE(r.n_in_m);
  EXPECT_TRUE(r.multiplicities_window_sensitive);
  for (const auto& row : r.rows) EXPECT_EQ(row.count_m, row.count_n);
}

TEST(Compare, CheckerboardVersusUncolored) {
  auto cb = gen_grid({41}, false, GridColoring::stripes({"Black", "White"}));
  auto plain = gen_grid({41}, false, plain_bw());
  auto r = extraction_compare(cb, plain, 1);
  EXPECT_FALSE(r.m_in_n);
  EXPECT_FALSE(r.n_in_m);
  EXPECT_EQ(r.missing_in_n.size(), 2u);
  EXPECT_EQ(r.missing_in_m.size(), 1u);
}

TEST(Compare, LanguageMismatchThrows) {
  EXPECT_THROW(extraction_compare(gen_grid({9}, false), gen_cayley_free(1, 4), 1), Error);
}

TEST(Compare, ReflexiveAndTransitiveOnAFamily) {
  std::vector<Structure> fam;
  fam.push_back(gen_grid({31}, false, GridColoring::stripes({"Black", "White"})));
  fam.push_back(gen_grid({31}, false, GridColoring::stripes({"Black", "White", "White"})));
  fam.push_back(gen_grid({31}, false, GridColoring::stripes({"Black", "White", "Black", "White", "White"})));
  fam.push_back(gen_grid({31}, false, GridColoring::stripes({"White", "Black"})));
  for (std::uint32_t h : {1u, 2u}) {
    std::vector<CensusTable> t;
    for (const auto& m : fam) t.push_back(census(m, h));
    auto in = [&](std::size_t a, std::size_t b) { return extraction_compare(t[a], t[b]).m_in_n; };
    for (std::size_t a = 0; a < fam.size(); ++a) {
      EXPECT_TRUE(in(a, a));
      for (std::size_t b = 0; b < fam.size(); ++b)
        for (std::size_t c = 0; c < fam.size(); ++c)
          if (in(a, b) && in(b, c)) {
            EXPECT_TRUE(in(a, c));
          }
    }
  }
}

TEST(LocalRule, CensusRuleAdmitsItsOwnWindowOnly) {
  auto m = gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("0"), 300);
  auto rule = rule_from_census(census(m, 2));
  EXPECT_FALSE(rule_violation(m, rule).has_value());
  auto other = gen_sturmian(parse_quadratic("sqrt(3)"), parse_quadratic("0"), 300);
  EXPECT_TRUE(rule_violation(other, rule).has_value());
}

TEST(Recurrence, PerClassRadiusBoundsTheReport) {
  auto m = gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("1/3"), 1500);
  auto table = census(m, 2);
  auto r = lip_check(m, table);
  ASSERT_TRUE(r.k.has_value());
  std::uint32_t worst = 0;
  for (std::size_t e = 0; e < table.entries.size(); ++e) {
    auto k = recurrence_radius(m, table, e, r.k_bound);
    ASSERT_TRUE(k.has_value());
    worst = std::max(worst, *k);
  }
  EXPECT_EQ(worst, *r.k);
}
