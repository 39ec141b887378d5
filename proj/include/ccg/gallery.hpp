#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccg/dynamics.hpp"
#include "ccg/game.hpp"
#include "ccg/stability.hpp"

namespace ccg {

struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<Node, Node>> edges;
  bool adjacent(Node u, Node v) const;
};

// ---------------------------------------------------------------- claims

enum class Verdict { Pass, Fail, Infeasible };
std::string verdict_name(Verdict v);

struct ClaimResult {
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

struct Claim {
  std::string text;
  std::function<ClaimResult(const Game&, const SearchOptions&)> check;
};

Claim claim_exists_stable(int k, bool expect, bool gossip = false);
Claim claim_partition_stable(Partition p, int k, bool expect = true, bool gossip = false);
Claim claim_global_utility(Partition p, ExtInt value);
Claim claim_custom(std::string text, std::function<bool(const Game&)> pred);

struct GalleryItem {
  std::string name;
  Game game{1};
  std::vector<Claim> claims;
};

struct VerifyReport {
  Verdict overall = Verdict::Pass;
  std::vector<std::pair<std::string, ClaimResult>> results;
};

// Runs every claim; SearchTooLarge turns into Infeasible. The overall verdict
// is Fail if any claim fails, else Infeasible if any ran out of budget.
VerifyReport verify(const GalleryItem& item, const SearchOptions& opts = {});

// ---------------------------------------------------------------- builders

// Four weight-1 triangles, one connector per triangle; connectors form a
// weight-1 clique and every other pair is hostile.
Game fig1();
Partition fig1_triangles();
std::vector<Node> fig1_connectors();

// v1..v3 = 0..2 form a w1 clique; u1..u3 = 3..5 are pairwise hostile;
// v_i - u_{i+1} = w3, v_i - u_{i+2} = w2, v_i - u_i hostile.
Game fig2_rotation(std::int64_t w1, std::int64_t w2, std::int64_t w3);

// A_i = i*h .. i*h+h-1 (a_i first), b_i = 4h+i, c_0 = 4h+4, c_1 = 4h+5.
Game fig3_no3stable(int h);

// x = 0..2, y = 3..5, z = 6..8, u = 9..11.
Game extent_ab(std::int64_t a, std::int64_t b);

struct NegabLayout {
  std::int64_t a = 0, b = 0;
  std::int64_t t[3] = {0, 0, 0};
  int u_size = 0;                  // |U_i| = b + a + 1
  int v_size[3] = {0, 0, 0};       // s_i = t_i (b+a) + 3 (b+a+1)
  // Node ranges [first, first+size).
  int u_first[3] = {0, 0, 0};
  int v_first[3] = {0, 0, 0};
  int vm_size[3] = {0, 0, 0};      // t_i b, prefix of V_i
  int vp_size[3] = {0, 0, 0};      // (t_i + 1) b, prefix of V_i
  int n = 0;
  int hub(int i) const { return u_first[i]; }
};
// Minimal t_1 <= t_2 <= t_3 satisfying the size inequalities. The terms
// max(t b, (t+1) a + 2(b+a) + 3) are multiplied by a.
NegabLayout negab_layout(std::int64_t a, std::int64_t b);
Game negab(std::int64_t a, std::int64_t b);

// u1..u4 = 0..3.
Game chaotic4();
// chaotic4 plus q-1 pendant nodes with a best-friend edge to u4.
Game chaotic_channels(int q);
// Disjoint union, all cross pairs hostile, of a friend pair (stable for
// every channel count) and chaotic_channels(q) for each q in bad_set.
// Every q in bad_set must appear in q_list.
Game chaotic_schedule(const std::vector<int>& q_list, const std::vector<int>& bad_set);

// Directed game on S (ids 0..|S|-1) plus z, u, v (ids |S|, |S|+1, |S|+2).
Game asym_partition_reduction(const std::vector<std::int64_t>& S);
// Whether the multiset splits into two halves of equal sum.
bool has_equal_split(const std::vector<std::int64_t>& S);

// Per vertex v of G: v1 = 5v, v2 = 5v+1, colored v_c = 5v+2+c; colors
// c_0..c_2 = 5n .. 5n+2.
Game gossip_3coloring_reduction(const SimpleGraph& G);
// Three groups built from a coloring (values 0..2).
Partition gossip_coloring_partition(const SimpleGraph& G, const std::vector<int>& color);
// Tries every 3-group candidate the reduction allows (one group per color
// node, each colored vertex with its color node, v1 v2 with one color) and
// returns the first that is 2-stable and gossip-stable.
std::optional<Partition> gossip_restricted_search(const SimpleGraph& G);
bool is_3_colorable(const SimpleGraph& G);

// Appends `cliques` (default n) hostile t-cliques of weight w_p, each joined
// to every original node with weight w_p. w_p defaults to the largest
// positive weight of g.
Game tilde_G(const Game& g, int t, int cliques = -1, std::optional<std::int64_t> wp = std::nullopt);
// Replaces every node by an alpha-clique of weight w_p; clique members copy
// the original weights. Node u maps to u*alpha .. u*alpha+alpha-1.
Game bar_G(const Game& g, int alpha, std::optional<std::int64_t> wp = std::nullopt);

struct HardnessLayout {
  Game game{1};
  std::int64_t wp = 0, f0 = 0;
  int alpha = 0, c0 = 0, t = 0;
  int n1 = 0;  // nodes 0..n1-1 hold G1 (x0 keeps its id), the rest G2
  Partition p0;
};
// G1 = tilde_G(G0, t) and G2 = bar_G(D_G, alpha), D_G hostile on the edges of
// the conflict graph and w_p elsewhere; x0 is joined to all of G2 with w_p.
HardnessLayout hardness_reduction(const SimpleGraph& conflict, int c, const Game& G0, Node x0, int k);

// (k+1) rows by n'/(k+1) columns, n' = (k+1)^2 floor(n/(k+1)^2); node
// (i, j) has id i * cols + j.
Game poa_grid(int k, int n, std::int64_t b = 1, std::int64_t a = 1);
Partition grid_rows(int k, int n);
Partition grid_columns(int k, int n);

Game poa_blocks(int k, std::int64_t b, std::int64_t b2, int n);
Partition blocks_partition(int k, std::int64_t b, int n);

enum class ZeroNashVariant { Guards, Circulant };
std::optional<ZeroNashVariant> parse_zero_nash_variant(const std::string& s);
// Guards: V1 = 0..n'-1, V2 = n'..2n'-1, guards 2n' and 2n'+1.
// Circulant: Z_n with hostile weight -a to the d nearest neighbours.
Game poa_zero_nash(ZeroNashVariant variant, std::int64_t b, std::int64_t a, std::int64_t R);
// The zero-utility 1-stable partition and one with utility at least R.
Partition zero_nash_stable(ZeroNashVariant variant, std::int64_t b, std::int64_t a, std::int64_t R);
Partition zero_nash_good(ZeroNashVariant variant, std::int64_t b, std::int64_t a, std::int64_t R);

// fig3_no3stable(2) plus one p-clique per node without a 0-edge and one per
// 0-edge; the 0-edges become 1 and every remaining pair is hostile.
Game uniform_2channel_counterexample(int p);

// ---------------------------------------------------------------- registry

using Params = std::map<std::string, std::string>;
std::vector<std::string> gallery_names();
// Throws PreconditionError on unknown names or bad parameters.
GalleryItem gallery_item(const std::string& name, const Params& params = {});

}  // namespace ccg
