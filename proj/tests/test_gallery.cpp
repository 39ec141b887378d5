#include <gtest/gtest.h>

#include <random>

#include "ccg/efficiency.hpp"
#include "ccg/gallery.hpp"
#include "oracles.hpp"

using namespace ccg;

TEST(Gallery, EveryItemVerifies) {
  for (const auto& name : gallery_names()) {
    GalleryItem item = gallery_item(name);
    VerifyReport rep = verify(item);
    for (const auto& [text, res] : rep.results)
      EXPECT_EQ(res.verdict, Verdict::Pass) << name << ": " << text << " " << res.detail;
  }
}

TEST(Gallery, UnknownNamesAndBadParametersThrow) {
  EXPECT_THROW(gallery_item("nope"), PreconditionError);
  EXPECT_THROW(gallery_item("poa_zero_nash", {{"variant", "square"}}), PreconditionError);
}

TEST(Gallery, Fig1Structure) {
  Game g = fig1();
  EXPECT_EQ(g.n(), 12);
  EXPECT_EQ(global_utility(g, fig1_triangles()), ExtInt(24));
  EXPECT_EQ(max_partition(g).value, ExtInt(24));
  EXPECT_TRUE(is_k_stable(g, fig1_triangles(), 3));
  EXPECT_FALSE(is_k_stable(g, fig1_triangles(), 4));
  EXPECT_EQ(fig1_connectors().size(), 4u);
}

TEST(Gallery, SmallCounterexamplesAgreeWithBruteForce) {
  struct Case {
    Game g;
    int k;
  };
  std::vector<Case> cases{{fig2_rotation(2, 3, 4), 2}, {chaotic4(), 2}};
  for (const auto& c : cases) {
    EXPECT_FALSE(oracle::exists_k_stable(c.g, c.k));
    EXPECT_TRUE(oracle::exists_k_stable(c.g, c.k - 1));
    EXPECT_FALSE(exists_k_stable(c.g, c.k).has_value());
  }
}

TEST(Gallery, NegabLayoutSizes) {
  NegabLayout l = negab_layout(1, 2);
  EXPECT_EQ(l.t[0], 20);
  EXPECT_EQ(l.t[1], 80);
  EXPECT_EQ(l.t[2], 260);
  EXPECT_EQ(l.u_size, 4);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(l.v_size[i], 3 * l.t[i] + 12);
  EXPECT_EQ(l.n, 1128);
  EXPECT_EQ(negab(1, 2).n(), 1128);
}

TEST(Gallery, BarGReplacesNodesByCliques) {
  Game g(2);
  g.set(0, 1, 3);
  Game b = bar_G(g, 2);
  ASSERT_EQ(b.n(), 4);
  EXPECT_EQ(b.w(0, 1), 3);
  EXPECT_EQ(b.w(2, 3), 3);
  EXPECT_EQ(b.w(0, 2), 3);
  EXPECT_EQ(b.w(1, 3), 3);
}

TEST(Gallery, TildeGAddsHostileCliques) {
  Game g = chaotic4();
  Game t = tilde_G(g, 3);
  EXPECT_EQ(t.n(), 4 + 4 * 3);
  EXPECT_GT(t.w(4, 5), 0);
  EXPECT_EQ(t.w(4, 5), t.w(0, 4));
  EXPECT_EQ(t.w(4, 7), kNegInf);
}

TEST(Gallery, EqualSplitMatchesBruteForce) {
  std::mt19937_64 rng(59);
  for (int it = 0; it < 200; ++it) {
    std::vector<std::int64_t> S(1 + it % 6);
    for (auto& x : S) x = 1 + static_cast<std::int64_t>(rng() % 9);
    EXPECT_EQ(has_equal_split(S), oracle::equal_split(S));
  }
}

TEST(Gallery, ThreeColoringMatchesBruteForce) {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 100; ++it) {
    SimpleGraph G;
    G.n = 3 + it % 4;
    for (int u = 0; u < G.n; ++u)
      for (int v = u + 1; v < G.n; ++v)
        if (rng() % 3) G.edges.emplace_back(u, v);
    EXPECT_EQ(is_3_colorable(G), oracle::three_colorable(G.n, G.edges));
  }
}

TEST(Gallery, ColoringPartitionIsStable) {
  SimpleGraph G{3, {{0, 1}, {1, 2}}};
  Partition p = gossip_coloring_partition(G, {0, 1, 0});
  Game g = gossip_3coloring_reduction(G);
  EXPECT_EQ(p.num_groups(), 3u);
  EXPECT_TRUE(is_k_stable(g, p, 2, true));
}

TEST(Gallery, GridWitnessRatio) {
  Game g = poa_grid(2, 36);
  auto r = witness_ratio(g, grid_rows(2, 36), grid_columns(2, 36));
  ASSERT_EQ(r.kind, PriceOfAnarchy::Kind::Finite);
  EXPECT_EQ(r.ratio, Rational(11, 2));
  EXPECT_TRUE(is_k_stable(g, grid_columns(2, 36), 2));
}

TEST(Gallery, BlocksPartitionValue) {
  // n' b (k b - 1) with n' = 16
  Game g = poa_blocks(2, 2, 1, 16);
  EXPECT_EQ(global_utility(g, blocks_partition(2, 2, 16)), ExtInt(16 * 2 * 3));
  EXPECT_TRUE(is_k_stable(g, blocks_partition(2, 2, 16), 2));
}

TEST(Gallery, ZeroNashPartitions) {
  for (auto v : {ZeroNashVariant::Guards, ZeroNashVariant::Circulant}) {
    Game g = poa_zero_nash(v, 1, 1, 8);
    Partition bad = zero_nash_stable(v, 1, 1, 8);
    EXPECT_EQ(global_utility(g, bad), ExtInt(0));
    EXPECT_TRUE(is_k_stable(g, bad, 1));
    EXPECT_GE(global_utility(g, zero_nash_good(v, 1, 1, 8)), ExtInt(8));
  }
}

TEST(Gallery, AsymmetricReductionTracksEqualSplit) {
  for (std::vector<std::int64_t> S : {std::vector<std::int64_t>{1, 1, 2}, {1, 2}, {2, 3, 5}, {1, 4}}) {
    Game g = asym_partition_reduction(S);
    EXPECT_EQ(exists_k_stable(g, 1).has_value(), has_equal_split(S)) << S.size();
  }
}
