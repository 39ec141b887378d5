#include <gtest/gtest.h>

#include <random>

#include "ccg/game.hpp"
#include "oracles.hpp"

using namespace ccg;

TEST(ExtInt, NegInfAbsorbsAddition) {
  ExtInt x = 5;
  x += ExtInt::neg_inf();
  EXPECT_TRUE(x.is_neg_inf());
  EXPECT_TRUE((ExtInt::neg_inf() + ExtInt(7)).is_neg_inf());
  EXPECT_EQ(ExtInt(3) + ExtInt(4), ExtInt(7));
}

TEST(ExtInt, OrderingPutsNegInfFirst) {
  EXPECT_LT(ExtInt::neg_inf(), ExtInt(INT64_MIN + 1));
  EXPECT_EQ(ExtInt::neg_inf(), ExtInt::neg_inf());
  EXPECT_NE(ExtInt::neg_inf(), ExtInt(0));
  EXPECT_EQ(ExtInt::neg_inf().str(), "-inf");
}

TEST(ExtInt, SubtractionAndOverflow) {
  EXPECT_EQ(ExtInt(3) - ExtInt(5), ExtInt(-2));
  EXPECT_TRUE((ExtInt::neg_inf() - ExtInt(5)).is_neg_inf());
  EXPECT_THROW(ExtInt(1) - ExtInt::neg_inf(), std::domain_error);
  EXPECT_THROW(ExtInt(INT64_MAX) + ExtInt(1), std::overflow_error);
  EXPECT_THROW(ExtInt::neg_inf().value(), std::domain_error);
}

TEST(Game, BestFriendValueScalesWithLargestWeight) {
  Game g(4);
  g.set(0, 1, 3);
  g.set(1, 2, -5);
  g.set(2, 3, Weight::best_friend());
  EXPECT_EQ(g.best_friend_value(), 4 * 5 + 1);
  EXPECT_EQ(g.w(2, 3), 21);
  EXPECT_EQ(g.w(3, 2), 21);
  g.set_enemies(0, 3);
  EXPECT_EQ(g.w(0, 3), kNegInf);
  EXPECT_TRUE(g.enemies(3, 0));
  EXPECT_EQ(g.max_positive(), 21);
}

TEST(Game, DirectedStoresBothDirections) {
  Game g(3, true);
  g.set(0, 1, 2);
  g.set(1, 0, -1);
  EXPECT_EQ(g.w(0, 1), 2);
  EXPECT_EQ(g.w(1, 0), -1);
  EXPECT_FALSE(g.is_symmetric());
}

TEST(Game, RejectsSelfPairsAndOutOfRange) {
  Game g(3);
  EXPECT_THROW(g.set(1, 1, 1), PreconditionError);
  EXPECT_THROW(g.set(0, 3, 1), PreconditionError);
}

TEST(Game, WeightSetValidation) {
  Game g(3);
  g.declare_weight_set({Weight::finite(1), Weight::neg_inf()});
  g.set(0, 1, 1);
  g.set_enemies(1, 2);
  EXPECT_NO_THROW(g.validate());
  g.set(0, 2, 7);
  EXPECT_THROW(g.validate(), InputError);
}

TEST(Game, UniformPredicates) {
  Game u = uniform_game(4, {{0, 1}});
  EXPECT_TRUE(u.is_uniform());
  EXPECT_FALSE(u.is_empty_conflict_uniform());
  EXPECT_TRUE(uniform_game(4).is_empty_conflict_uniform());
}

TEST(Partition, CanonicalOrderBySizeThenMinimum) {
  Partition p(6, {{5}, {3, 1}, {4, 0, 2}});
  ASSERT_EQ(p.num_groups(), 3u);
  EXPECT_EQ(p.group(0), (std::vector<Node>{0, 2, 4}));
  EXPECT_EQ(p.group(1), (std::vector<Node>{1, 3}));
  EXPECT_EQ(p.group(2), (std::vector<Node>{5}));
  EXPECT_EQ(p.group_of(3), 1);
  Partition q(6, {{1, 3}, {5}, {0, 2, 4}});
  EXPECT_EQ(p, q);
  EXPECT_EQ(p.key(), q.key());
}

TEST(Partition, FromLabelsMatchesGroups) {
  Partition p = Partition::from_labels({2, 2, 0, 1, 0});
  EXPECT_EQ(p, Partition(5, {{0, 1}, {2, 4}, {3}}));
  EXPECT_EQ(Partition(3).num_groups(), 3u);
  EXPECT_EQ(Partition::single_group(3).num_groups(), 1u);
}

TEST(Partition, RejectsInvalidGroups) {
  EXPECT_ANY_THROW(Partition(3, {{0, 1}, {1, 2}}));
  EXPECT_ANY_THROW(Partition(3, {{0, 1}}));
}

TEST(PartitionVector, LexicographicFromLargestSize) {
  auto a = partition_vector(Partition(5, {{0, 1, 2}, {3}, {4}}));
  auto b = partition_vector(Partition(5, {{0, 1}, {2, 3}, {4}}));
  auto c = partition_vector(Partition(5, {{0, 1, 2}, {3, 4}}));
  EXPECT_GT(a, b);
  EXPECT_GT(c, a);
  EXPECT_EQ(c.sizes(), (std::vector<int>{3, 2}));
  EXPECT_EQ(PartitionVector::from_sizes(5, {3, 2}), c);
}

TEST(Utility, MatchesBruteForceOnRandomGames) {
  std::mt19937_64 rng(11);
  auto pool = oracle::pool({-3, -1, 0, 1, 2, 5}, true);
  for (int it = 0; it < 200; ++it) {
    int n = 2 + it % 5;
    bool directed = it % 3 == 0;
    Game g = oracle::random_game(rng, n, pool, directed);
    auto parts = oracle::set_partitions(n);
    const auto& lab = parts[rng() % parts.size()];
    Partition p = Partition::from_labels(lab);
    for (int u = 0; u < n; ++u) EXPECT_EQ(utility(g, p, u), oracle::utility(g, lab, u));
    EXPECT_EQ(global_utility(g, p), oracle::global(g, lab));
  }
}

TEST(FriendshipGraph, GirthOfCycleAndTree) {
  Game c5(5);
  for (int i = 0; i < 5; ++i) c5.set(i, (i + 1) % 5, 1);
  EXPECT_EQ(girth(friendship_graph(c5)), 5);
  Game path(4);
  path.set(0, 1, 1);
  path.set(1, 2, 2);
  path.set(2, 3, -1);
  EXPECT_FALSE(girth(friendship_graph(path)).has_value());
}

TEST(Twins, IdenticalRowsFormOneClass) {
  Game g(4);
  g.set(0, 1, 2);
  g.set(0, 2, 3);
  g.set(1, 2, 3);
  g.set_enemies(3, 2);
  auto classes = twin_classes(g);
  bool found = false;
  for (const auto& c : classes) found |= c == std::vector<Node>{0, 1};
  EXPECT_TRUE(found);
  EXPECT_EQ(find_twins(g).size(), 1u);
}
