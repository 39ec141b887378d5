#include <gtest/gtest.h>

#include <random>

#include "ccg/lattice.hpp"
#include "ccg/stability.hpp"
#include "oracles.hpp"

using namespace ccg;

TEST(Lattice, AllIntegerPartitionsMatchOracle) {
  for (int n = 1; n <= 12; ++n) {
    auto ours = all_integer_partitions(n);
    auto expect = oracle::integer_partitions(n);
    std::sort(ours.begin(), ours.end());
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(ours, expect) << n;
  }
}

TEST(Lattice, DominanceAndCoveringMatchDefinition) {
  for (int n = 1; n <= 8; ++n) {
    auto all = oracle::integer_partitions(n);
    for (const auto& a : all)
      for (const auto& b : all) {
        EXPECT_EQ(dominates(a, b), oracle::dominates(a, b));
        EXPECT_EQ(covers(a, b), oracle::covers(a, b, all));
      }
  }
}

TEST(Lattice, SuccessorsAndPredecessorsAreCovers) {
  for (int n = 2; n <= 9; ++n)
    for (const auto& q : all_integer_partitions(n)) {
      for (const auto& s : covering_successors(q)) EXPECT_TRUE(covers(s, q));
      for (const auto& s : covering_predecessors(q)) EXPECT_TRUE(covers(q, s));
    }
}

TEST(Lattice, VectorConversionRoundTrips) {
  IntegerPartition q{4, 2, 2, 1};
  auto v = to_partition_vector(q, 9);
  EXPECT_EQ(v[2], 2);
  EXPECT_EQ(to_integer_partition(v), q);
}

TEST(Lattice, LongestChainEqualsFormula) {
  for (int n = 1; n <= 14; ++n) EXPECT_EQ(longest_chain(n), L1_formula(n)) << n;
}

TEST(Lattice, ChainPathIsACoveringChain) {
  for (int n = 1; n <= 12; ++n) {
    auto path = longest_chain_path(n);
    ASSERT_EQ(path.size(), longest_chain(n) + 1);
    EXPECT_EQ(path.front(), IntegerPartition(n, 1));
    EXPECT_EQ(path.back(), IntegerPartition{n});
    for (std::size_t i = 1; i < path.size(); ++i) EXPECT_TRUE(covers(path[i], path[i - 1]));
  }
}

TEST(Lattice, ReachabilityEqualsDominance) {
  for (int n = 1; n <= 6; ++n) {
    auto all = oracle::integer_partitions(n);
    for (const auto& a : all)
      for (const auto& b : all) EXPECT_EQ(deviation_reaches(a, b, n), oracle::dominates(b, a));
  }
}

TEST(Lattice, DecompositionUsesCoveringSteps) {
  std::mt19937_64 rng(53);
  Game g = uniform_game(9);
  for (int it = 0; it < 300; ++it) {
    std::vector<int> lab(9);
    for (auto& l : lab) l = static_cast<int>(rng() % 5);
    Partition p = Partition::from_labels(lab);
    auto devs = enumerate_deviations(g, p, 1);
    if (devs.empty()) continue;
    const Deviation& d = devs[rng() % devs.size()];
    Partition expect = apply_deviation(g, p, d);
    auto steps = decompose_to_covering_steps(p, d);
    ASSERT_FALSE(steps.empty());
    Partition cur = p;
    for (const auto& s : steps) {
      Partition next = apply_deviation(g, cur, s.deviation);
      EXPECT_EQ(next, s.after);
      EXPECT_TRUE(covers(to_integer_partition(partition_vector(next)), to_integer_partition(partition_vector(cur))));
      cur = next;
    }
    EXPECT_EQ(partition_vector(cur), partition_vector(expect));
  }
}
