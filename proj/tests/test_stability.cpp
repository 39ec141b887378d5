#include <gtest/gtest.h>

#include <random>

#include "ccg/gallery.hpp"
#include "ccg/stability.hpp"
#include "oracles.hpp"

using namespace ccg;

TEST(Stability, IsKStableMatchesBruteForce) {
  std::mt19937_64 rng(31);
  auto pool = oracle::pool({-2, -1, 0, 1, 3}, true);
  for (int it = 0; it < 300; ++it) {
    int n = 2 + it % 5;
    int k = 1 + it % 3;
    Game g = oracle::random_game(rng, n, pool, it % 5 == 0);
    auto parts = oracle::set_partitions(n);
    const auto& lab = parts[rng() % parts.size()];
    EXPECT_EQ(is_k_stable(g, Partition::from_labels(lab), k), oracle::is_k_stable(g, lab, k));
  }
}

TEST(Stability, ExistenceMatchesBruteForce) {
  std::mt19937_64 rng(37);
  auto pool = oracle::pool({-3, -1, 1, 2}, true);
  for (int it = 0; it < 150; ++it) {
    int n = 3 + it % 3;
    int k = 1 + it % 3;
    Game g = oracle::random_game(rng, n, pool, it % 3 == 0);
    auto found = exists_k_stable(g, k);
    EXPECT_EQ(found.has_value(), oracle::exists_k_stable(g, k));
    if (found) EXPECT_TRUE(oracle::is_k_stable(g, found->labels(), k));
  }
}

TEST(Stability, AllStableCountMatchesBruteForce) {
  std::mt19937_64 rng(41);
  auto pool = oracle::pool({-1, 1, 2}, true);
  for (int it = 0; it < 60; ++it) {
    int n = 3 + it % 3;
    Game g = oracle::random_game(rng, n, pool);
    std::size_t expect = 0;
    for (const auto& lab : oracle::set_partitions(n)) expect += oracle::is_k_stable(g, lab, 2);
    EXPECT_EQ(all_k_stable(g, 2).size(), expect);
  }
}

TEST(Stability, MergingTwinsKeepsExistence) {
  std::mt19937_64 rng(43);
  auto pool = oracle::pool({-2, 1, 3}, true);
  SearchOptions merged;
  merged.merge_twins = true;
  for (int it = 0; it < 100; ++it) {
    Game g = oracle::random_game(rng, 4 + it % 3, pool);
    // force a twin pair
    g.set(0, 1, 3);
    for (int x = 2; x < g.n(); ++x) g.set(1, x, g.weight(0, x));
    for (int k = 1; k <= 2; ++k)
      EXPECT_EQ(exists_k_stable(g, k).has_value(), exists_k_stable(g, k, false, merged).has_value());
  }
}

TEST(Stability, FeasiblePartitionsSkipHostileGroups) {
  EXPECT_EQ(count_feasible_partitions(uniform_game(6)), 203u);
  std::mt19937_64 rng(47);
  auto pool = oracle::pool({1}, true);
  for (int it = 0; it < 30; ++it) {
    Game g = oracle::random_game(rng, 6, pool);
    std::uint64_t expect = 0;
    for (const auto& lab : oracle::set_partitions(6)) expect += oracle::global(g, lab).finite();
    EXPECT_EQ(count_feasible_partitions(g), expect);
  }
}

TEST(Stability, FeasibleEnumerationUsesGrowthStrings) {
  std::vector<std::vector<int>> seen;
  for_each_feasible_partition(uniform_game(4), [&](const std::vector<int>& lab) {
    seen.push_back(lab);
    return true;
  });
  EXPECT_EQ(seen, oracle::set_partitions(4));
}

TEST(Stability, BudgetOverrunThrows) {
  SearchOptions tiny;
  tiny.budget = 10;
  EXPECT_THROW(count_feasible_partitions(uniform_game(8), tiny), SearchTooLarge);
  tiny.budget = 2;
  EXPECT_THROW(exists_k_stable(chaotic4(), 2, false, tiny), SearchTooLarge);
}

TEST(Stability, GossipStabilityIsStricter) {
  // two friendly pairs; crossing pairs like each other more than their partners
  Game g(4);
  g.set(0, 1, 2);
  g.set(2, 3, 2);
  g.set(0, 2, 3);
  g.set(1, 3, 3);
  g.set(0, 3, -2);
  g.set(1, 2, -2);
  Partition p(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(is_k_stable(g, p, 1));
  EXPECT_FALSE(enumerate_gossip(g, p).empty());
  EXPECT_FALSE(is_k_stable(g, p, 1, true));
}

TEST(LongestSequence, UniformGameMatchesFormulaAndOracle) {
  for (int n = 1; n <= 8; ++n) {
    auto r = longest_sequence(uniform_game(n), 1);
    ASSERT_TRUE(r.length.has_value());
    EXPECT_EQ(*r.length, L1_formula(n)) << n;
    EXPECT_EQ(static_cast<long long>(*r.length), oracle::longest_uniform_1(n)) << n;
    EXPECT_EQ(r.witness.num_steps, *r.length);
  }
}

TEST(LongestSequence, PairsDoNotLengthenUniformRuns) {
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(L_empty(2, n), L1_formula(n)) << n;
}

TEST(LongestSequence, CycleReportedAsUnbounded) {
  EXPECT_FALSE(longest_sequence(chaotic4(), 2).length.has_value());
}

TEST(Formula, SmallValues) {
  // 2 C(m+1,3) + m r with n = m(m+1)/2 + r
  EXPECT_EQ(L1_formula(1), 0u);
  EXPECT_EQ(L1_formula(3), 2u);
  EXPECT_EQ(L1_formula(6), 8u);
  EXPECT_EQ(L1_formula(10), 20u);
  EXPECT_EQ(L1_formula(12), 28u);
}

TEST(Formula, IntegerPartitionCount) {
  for (int n = 0; n <= 20; ++n) EXPECT_EQ(integer_partition_count(n), oracle::integer_partitions(n).size());
  EXPECT_EQ(integer_partition_count(100), 190569292u);
}
