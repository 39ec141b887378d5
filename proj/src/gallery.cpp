#include "ccg/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "ccg/efficiency.hpp"
#include "ccg/extensions.hpp"

namespace ccg {

bool SimpleGraph::adjacent(Node u, Node v) const {
  for (auto [a, b] : edges)
    if ((a == u && b == v) || (a == v && b == u)) return true;
  return false;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    default: return "INFEASIBLE";
  }
}

namespace {

ClaimResult pass_if(bool ok, std::string detail) { return {ok ? Verdict::Pass : Verdict::Fail, std::move(detail)}; }

void declare(Game& g, std::vector<Weight> ws) { g.declare_weight_set(std::move(ws)); }

Weight fin(std::int64_t v) { return Weight::finite(v); }
const Weight kInf = Weight::neg_inf();

// Every pair hostile, to be overwritten.
Game hostile_game(int n) {
  Game g(n);
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) g.set_enemies(u, v);
  return g;
}

}  // namespace

Claim claim_exists_stable(int k, bool expect, bool gossip) {
  std::string text = std::string(expect ? "some" : "no") + " " + std::to_string(k) + "-stable partition" +
                     (gossip ? " (gossip-stable)" : "");
  return {text, [=](const Game& g, const SearchOptions& o) {
            auto p = exists_k_stable(g, k, gossip, o);
            return pass_if(p.has_value() == expect, p ? "found " + p->str() : "none");
          }};
}

Claim claim_partition_stable(Partition p, int k, bool expect, bool gossip) {
  std::string text = p.str() + (expect ? " is " : " is not ") + std::to_string(k) + "-stable";
  return {text, [=](const Game& g, const SearchOptions&) {
            auto d = first_deviation(g, p, k);
            bool stable = !d && (!gossip || enumerate_gossip(g, p).empty());
            return pass_if(stable == expect, d ? "deviation " + d->str() : "no deviation");
          }};
}

Claim claim_global_utility(Partition p, ExtInt value) {
  std::string text = "f" + p.str() + " = " + value.str();
  return {text, [=](const Game& g, const SearchOptions&) {
            ExtInt f = global_utility(g, p);
            return pass_if(f == value, "f = " + f.str());
          }};
}

Claim claim_custom(std::string text, std::function<bool(const Game&)> pred) {
  return {std::move(text), [pred](const Game& g, const SearchOptions&) { return pass_if(pred(g), ""); }};
}

VerifyReport verify(const GalleryItem& item, const SearchOptions& opts) {
  VerifyReport rep;
  bool fail = false, infeasible = false;
  for (const auto& c : item.claims) {
    ClaimResult r;
    try {
      r = c.check(item.game, opts);
    } catch (const SearchTooLarge& e) {
      r = {Verdict::Infeasible, e.what()};
    }
    fail |= r.verdict == Verdict::Fail;
    infeasible |= r.verdict == Verdict::Infeasible;
    rep.results.emplace_back(c.text, r);
  }
  rep.overall = fail ? Verdict::Fail : infeasible ? Verdict::Infeasible : Verdict::Pass;
  return rep;
}

// ---------------------------------------------------------------- builders

Game fig1() {
  Game g = hostile_game(12);
  for (int t = 0; t < 4; ++t)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) g.set(3 * t + i, 3 * t + j, 1);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) g.set(3 * a, 3 * b, 1);
  declare(g, {kInf, fin(1)});
  return g;
}

Partition fig1_triangles() { return Partition(12, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}}); }

std::vector<Node> fig1_connectors() { return {0, 3, 6, 9}; }

Game fig2_rotation(std::int64_t w1, std::int64_t w2, std::int64_t w3) {
  require(0 < w1 && w1 < w2 && w2 < w3, "fig2 needs 0 < w1 < w2 < w3");
  require(w1 + w2 > w3, "fig2 needs w1 + w2 > w3");
  Game g = hostile_game(6);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) g.set(i, j, w1);
    g.set(i, 3 + (i + 1) % 3, w3);
    g.set(i, 3 + (i + 2) % 3, w2);
  }
  declare(g, {kInf, fin(w1), fin(w2), fin(w3)});
  return g;
}

Game fig3_no3stable(int h) {
  require(h >= 2, "fig3 needs h >= 2");
  int n = 4 * h + 6;
  Game g = hostile_game(n);
  auto A = [&](int i, int j) { return ((i % 4 + 4) % 4) * h + j; };
  auto B = [&](int i) { return 4 * h + (i % 4 + 4) % 4; };
  int c[2] = {4 * h + 4, 4 * h + 5};
  for (int i = 0; i < 4; ++i) {
    for (int x = 0; x < h; ++x)
      for (int y = x + 1; y < h; ++y) g.set(A(i, x), A(i, y), 1);
    for (int x = 0; x < h; ++x) g.set(B(i), A(i, x), 1);
    for (int x = 1; x < h; ++x) g.set(B(i), A(i + 1, x), 1);
    g.set(B(i), A(i + 1, 0), 0);
    g.set(B(i), B(i + 1), 1);
    for (int j = 0; j < 2; ++j) g.set(c[j], B(i), 1);
    for (int x = 0; x < h; ++x) g.set(c[i % 2], A(i, x), 1);
  }
  declare(g, {kInf, fin(0), fin(1)});
  return g;
}

Game extent_ab(std::int64_t a, std::int64_t b) {
  require(0 < a && a < b, "extent_ab needs 0 < a < b");
  Game g = hostile_game(12);
  const Node x = 0, y = 3, z = 6, u = 9;
  for (Node base : {x, y, z, u})
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) g.set(base + i, base + j, b);
  for (int i = 0; i < 3; ++i) {
    g.set(x + i, u + 0, b);
    g.set(y + i, u + 1, b);
    g.set(z + i, u + 2, b);
  }
  // Each hub likes two members of the next clique fully and the third a little.
  const Node liked[3] = {z, x, y};
  for (int i = 0; i < 3; ++i) {
    g.set(u + i, liked[i] + 0, b);
    g.set(u + i, liked[i] + 1, b);
    g.set(u + i, liked[i] + 2, a);
  }
  declare(g, {kInf, fin(a), fin(b)});
  return g;
}

NegabLayout negab_layout(std::int64_t a, std::int64_t b) {
  require(a >= 1 && b >= 1, "negab needs positive a and b");
  NegabLayout L;
  L.a = a;
  L.b = b;
  std::int64_t s = a + b;
  auto lhs = [&](std::int64_t t) { return std::max(t * b, (t + 1) * a + 2 * s + 3) * a; };
  std::int64_t t1 = std::max<std::int64_t>(1, (5 * (s + 1) + std::max<std::int64_t>(b - a, 1) - 1) /
                                                  std::max<std::int64_t>(b - a, 1));
  while (lhs(t1) < (3 * s + 2) * b + 1) ++t1;
  std::int64_t t2 = t1;
  while (lhs(t2) < ((t1 + 5) * s + 4) * b + 1) ++t2;
  std::int64_t t3 = t2;
  while (lhs(t3) < ((t2 + 5) * s + 4) * b + 1) ++t3;
  L.t[0] = t1;
  L.t[1] = t2;
  L.t[2] = t3;
  L.u_size = static_cast<int>(s + 1);
  int next = 0;
  for (int i = 0; i < 3; ++i) {
    L.u_first[i] = next;
    next += L.u_size;
  }
  for (int i = 0; i < 3; ++i) {
    L.v_size[i] = static_cast<int>(L.t[i] * s + 3 * (s + 1));
    L.vm_size[i] = static_cast<int>(L.t[i] * b);
    L.vp_size[i] = static_cast<int>((L.t[i] + 1) * b);
    L.v_first[i] = next;
    next += L.v_size[i];
  }
  L.n = next;
  return L;
}

Game negab(std::int64_t a, std::int64_t b) {
  NegabLayout L = negab_layout(a, b);
  Game g(L.n);
  for (Node u = 0; u < L.n; ++u)
    for (Node v = u + 1; v < L.n; ++v) g.set(u, v, -a);
  auto clique = [&](int first, int size) {
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) g.set(first + i, first + j, b);
  };
  clique(L.u_first[0], 3 * L.u_size);
  for (int i = 0; i < 3; ++i) clique(L.v_first[i], L.v_size[i]);
  for (int i = 0; i < 3; ++i) {
    int nx = (i + 1) % 3;
    for (int x = 0; x < L.u_size; ++x) {
      Node u = L.u_first[i] + x;
      for (int y = L.vm_size[i]; y < L.v_size[i]; ++y) g.set(u, L.v_first[i] + y, b);
      for (int y = L.vp_size[nx]; y < L.v_size[nx]; ++y) g.set(u, L.v_first[nx] + y, b);
    }
  }
  declare(g, {fin(-a), fin(b)});
  return g;
}

Game chaotic4() {
  Game g(4);
  g.set(0, 3, 7);
  g.set(1, 3, 6);
  g.set(2, 3, 2);
  g.set(1, 2, -4);
  g.set_enemies(0, 1);
  g.set_enemies(0, 2);
  declare(g, {kInf, fin(-4), fin(2), fin(6), fin(7)});
  return g;
}

Game chaotic_channels(int q) {
  require(q >= 1, "q must be at least 1");
  Game base = chaotic4();
  int n = 4 + (q - 1);
  Game g(n);
  for (Node u = 0; u < 4; ++u)
    for (Node v = u + 1; v < 4; ++v) g.set(u, v, base.weight(u, v));
  for (Node x = 4; x < n; ++x) {
    g.set(x, 3, Weight::best_friend());
    for (Node y = 0; y < n; ++y)
      if (y != x && y != 3) g.set_enemies(x, y);
  }
  auto ws = base.weight_set();
  if (q > 1) ws.push_back(Weight::best_friend());
  declare(g, ws);
  return g;
}

Game chaotic_schedule(const std::vector<int>& q_list, const std::vector<int>& bad_set) {
  for (int q : bad_set)
    require(std::find(q_list.begin(), q_list.end(), q) != q_list.end(), "bad channel count missing from q_list");
  std::vector<Game> parts;
  Game pair(2);
  pair.set(0, 1, 1);
  parts.push_back(pair);
  for (int q : bad_set) parts.push_back(chaotic_channels(q));
  int n = 0;
  for (auto& p : parts) n += p.n();
  Game g = hostile_game(n);
  std::set<Weight> ws{kInf, fin(1)};
  int off = 0;
  for (auto& p : parts) {
    for (Node u = 0; u < p.n(); ++u)
      for (Node v = u + 1; v < p.n(); ++v) g.set(off + u, off + v, p.weight(u, v));
    for (auto& w : p.weight_set()) ws.insert(w);
    off += p.n();
  }
  declare(g, {ws.begin(), ws.end()});
  return g;
}

Game asym_partition_reduction(const std::vector<std::int64_t>& S) {
  require(!S.empty(), "multiset must not be empty");
  for (auto s : S) require(s > 0, "multiset entries must be positive");
  int m = static_cast<int>(S.size());
  std::int64_t T = std::accumulate(S.begin(), S.end(), std::int64_t{0});
  Node z = m, u = m + 1, v = m + 2;
  Game g(m + 3, true);
  std::set<Weight> ws{kInf, fin(0)};
  auto put = [&](Node a, Node b, Weight w) {
    g.set(a, b, w);
    ws.insert(w);
  };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      if (i != j) put(i, j, fin(-S[j]));
    put(i, u, fin(T - S[i] + 1));
    put(i, v, fin(T - S[i] + 1));
    put(u, i, fin(0));
    put(v, i, fin(0));
    put(i, z, fin(S[i]));
    put(z, i, fin(-S[i]));
  }
  put(u, v, kInf);
  put(v, u, kInf);
  put(u, z, fin(0));
  put(v, z, fin(0));
  put(z, u, fin(T + 1));
  put(z, v, fin(T + 1));
  declare(g, {ws.begin(), ws.end()});
  return g;
}

bool has_equal_split(const std::vector<std::int64_t>& S) {
  std::int64_t T = std::accumulate(S.begin(), S.end(), std::int64_t{0});
  if (T % 2) return false;
  std::set<std::int64_t> reach{0};
  for (auto s : S) {
    std::set<std::int64_t> nxt = reach;
    for (auto r : reach) nxt.insert(r + s);
    reach = std::move(nxt);
  }
  return reach.count(T / 2) > 0;
}

Game gossip_3coloring_reduction(const SimpleGraph& G) {
  require(G.n >= 1, "graph needs a vertex");
  int n = 5 * G.n + 3;
  Game g(n);
  auto v1 = [](Node v) { return 5 * v; };
  auto v2 = [](Node v) { return 5 * v + 1; };
  auto vc = [](Node v, int c) { return 5 * v + 2 + c; };
  auto col = [&](int c) { return 5 * G.n + c; };
  for (Node v = 0; v < G.n; ++v) {
    g.set(v1(v), v2(v), 1);
    for (int c = 0; c < 3; ++c) {
      g.set(v1(v), vc(v, c), 1);
      g.set(v2(v), vc(v, c), 1);
      g.set(col(c), vc(v, c), 1);
      for (int d = c + 1; d < 3; ++d) g.set_enemies(vc(v, c), vc(v, d));
    }
  }
  for (int c = 0; c < 3; ++c)
    for (int d = 0; d < 3; ++d) {
      if (c == d) continue;
      if (c < d) g.set_enemies(col(c), col(d));
      for (Node u = 0; u < G.n; ++u) {
        g.set_enemies(vc(u, c), col(d));
        for (Node v = 0; v < G.n; ++v)
          if (u != v) g.set_enemies(vc(u, c), vc(v, d));
      }
    }
  for (auto [a, b] : G.edges)
    for (Node x : {v1(a), v2(a)})
      for (Node y : {v1(b), v2(b)}) g.set_enemies(x, y);
  declare(g, {kInf, fin(0), fin(1)});
  return g;
}

Partition gossip_coloring_partition(const SimpleGraph& G, const std::vector<int>& color) {
  require(static_cast<int>(color.size()) == G.n, "one color per vertex");
  std::vector<std::vector<Node>> groups(3);
  for (int c = 0; c < 3; ++c) groups[c].push_back(5 * G.n + c);
  for (Node v = 0; v < G.n; ++v) {
    require(color[v] >= 0 && color[v] < 3, "colors are 0, 1, 2");
    groups[color[v]].push_back(5 * v);
    groups[color[v]].push_back(5 * v + 1);
    for (int c = 0; c < 3; ++c) groups[c].push_back(5 * v + 2 + c);
  }
  return Partition(5 * G.n + 3, std::move(groups));
}

std::optional<Partition> gossip_restricted_search(const SimpleGraph& G) {
  Game g = gossip_3coloring_reduction(G);
  std::vector<int> color(G.n, 0);
  for (;;) {
    Partition p = gossip_coloring_partition(G, color);
    if (is_k_stable(g, p, 2, true)) return p;
    int i = 0;
    while (i < G.n && ++color[i] == 3) color[i++] = 0;
    if (i == G.n) return std::nullopt;
  }
}

bool is_3_colorable(const SimpleGraph& G) {
  std::vector<int> color(G.n, 0);
  for (;;) {
    bool ok = true;
    for (auto [a, b] : G.edges) ok &= color[a] != color[b];
    if (ok) return true;
    int i = 0;
    while (i < G.n && ++color[i] == 3) color[i++] = 0;
    if (i == G.n) return false;
  }
}

namespace {

std::int64_t resolve_wp(const Game& g, std::optional<std::int64_t> wp) {
  std::int64_t v = wp ? *wp : g.max_positive();
  require(v > 0, "transformation needs a positive weight");
  return v;
}

std::vector<Weight> with_weight(const Game& g, Weight w) {
  std::set<Weight> ws(g.weight_set().begin(), g.weight_set().end());
  if (ws.empty())
    for (auto& x : g.used_weights()) ws.insert(x);
  ws.insert(w);
  return {ws.begin(), ws.end()};
}

}  // namespace

Game tilde_G(const Game& g, int t, int cliques, std::optional<std::int64_t> wp) {
  require(t >= 1, "clique size must be positive");
  if (cliques < 0) cliques = g.n();
  std::int64_t p = resolve_wp(g, wp);
  int n = g.n(), total = n + cliques * t;
  Game out(total, g.directed());
  for (Node u = 0; u < n; ++u)
    for (Node v = 0; v < n; ++v)
      if (u != v) out.set(u, v, g.weight(u, v));
  for (int i = 0; i < cliques; ++i)
    for (int x = 0; x < t; ++x) {
      Node a = n + i * t + x;
      for (Node v = 0; v < n; ++v) {
        out.set(a, v, p);
        out.set(v, a, p);
      }
      for (int j = 0; j < cliques; ++j)
        for (int y = 0; y < t; ++y) {
          Node b = n + j * t + y;
          if (a == b) continue;
          if (i == j)
            out.set(a, b, p);
          else
            out.set_enemies(a, b);
        }
    }
  auto ws = with_weight(g, fin(p));
  if (cliques > 1) ws.push_back(kInf);
  declare(out, ws);
  return out;
}

Game bar_G(const Game& g, int alpha, std::optional<std::int64_t> wp) {
  require(alpha >= 1, "alpha must be positive");
  std::int64_t p = resolve_wp(g, wp);
  int n = g.n();
  Game out(n * alpha, g.directed());
  for (Node u = 0; u < n; ++u)
    for (int i = 0; i < alpha; ++i) {
      Node a = u * alpha + i;
      for (int j = 0; j < alpha; ++j)
        if (i != j) out.set(a, u * alpha + j, p);
      for (Node v = 0; v < n; ++v)
        if (v != u)
          for (int j = 0; j < alpha; ++j) out.set(a, v * alpha + j, g.weight(u, v));
    }
  declare(out, with_weight(g, fin(p)));
  return out;
}

HardnessLayout hardness_reduction(const SimpleGraph& conflict, int c, const Game& G0, Node x0, int k) {
  require(!G0.directed(), "hardness construction needs a symmetric seed game");
  int n0 = G0.n();
  require(x0 >= 0 && x0 < n0 && n0 >= 2, "x0 out of range");
  HardnessLayout L;
  L.wp = resolve_wp(G0, std::nullopt);
  // The seed without x0, with x0 renumbered last.
  std::vector<Node> rest;
  for (Node u = 0; u < n0; ++u)
    if (u != x0) rest.push_back(u);
  Game sub(n0 - 1);
  for (int i = 0; i < n0 - 1; ++i)
    for (int j = i + 1; j < n0 - 1; ++j) sub.set(i, j, G0.weight(rest[i], rest[j]));
  auto p0 = exists_k_stable(sub, k);
  require(p0.has_value(), "seed without x0 must have a k-stable partition");
  std::vector<int> labels(n0);
  for (int i = 0; i < n0 - 1; ++i) labels[rest[i]] = p0->group_of(rest[i]);
  labels[x0] = static_cast<int>(p0->num_groups());
  L.p0 = Partition::from_labels(labels);
  require(first_deviation(G0, L.p0, k).has_value(), "seed must have no k-stable partition");
  std::int64_t f0 = std::numeric_limits<std::int64_t>::min();
  for_each_deviation(G0, L.p0, k, [&](const Deviation& d) {
    ExtInt fx = utility(G0, apply_deviation(G0, L.p0, d), x0);
    if (fx.finite()) f0 = std::max(f0, fx.value());
    return true;
  });
  require(f0 > 0, "x0 must reach a positive utility by some deviation");
  L.f0 = f0;
  L.alpha = static_cast<int>((f0 + L.wp - 1) / L.wp);
  L.c0 = 2 * n0 + 1;
  require(c >= L.c0, "c must be at least 2 n0 + 1");
  // floor(alpha c - f0 / wp)
  std::int64_t num = static_cast<std::int64_t>(L.alpha) * c * L.wp - f0;
  L.t = static_cast<int>(num / L.wp);
  Game G1 = tilde_G(G0, L.t);
  Game DG(conflict.n);
  for (Node u = 0; u < conflict.n; ++u)
    for (Node v = u + 1; v < conflict.n; ++v) {
      if (conflict.adjacent(u, v))
        DG.set_enemies(u, v);
      else
        DG.set(u, v, L.wp);
    }
  Game G2 = bar_G(DG, L.alpha, L.wp);
  L.n1 = G1.n();
  Game H = hostile_game(G1.n() + G2.n());
  for (Node u = 0; u < G1.n(); ++u)
    for (Node v = u + 1; v < G1.n(); ++v) H.set(u, v, G1.weight(u, v));
  for (Node u = 0; u < G2.n(); ++u)
    for (Node v = u + 1; v < G2.n(); ++v) H.set(L.n1 + u, L.n1 + v, G2.weight(u, v));
  for (Node v = 0; v < G2.n(); ++v) H.set(x0, L.n1 + v, L.wp);
  declare(H, with_weight(G1, kInf));
  L.game = std::move(H);
  return L;
}

namespace {

struct GridShape {
  int rows, cols;
};
GridShape grid_shape(int k, int n) {
  require(k >= 1, "k must be positive");
  int r = k + 1;
  int np = r * r * (n / (r * r));
  require(np > 0, "n is too small for the grid");
  return {r, np / r};
}

}  // namespace

Game poa_grid(int k, int n, std::int64_t b, std::int64_t a) {
  require(b > 0 && a >= 0, "grid needs b > 0 and a >= 0");
  auto [rows, cols] = grid_shape(k, n);
  Game g(rows * cols);
  for (Node u = 0; u < rows * cols; ++u)
    for (Node v = u + 1; v < rows * cols; ++v) {
      bool friends = u / cols == v / cols || u % cols == v % cols;
      g.set(u, v, friends ? b : -a);
    }
  declare(g, {fin(-a), fin(b)});
  return g;
}

Partition grid_rows(int k, int n) {
  auto [rows, cols] = grid_shape(k, n);
  std::vector<int> labels(rows * cols);
  for (Node u = 0; u < rows * cols; ++u) labels[u] = u / cols;
  return Partition::from_labels(labels);
}

Partition grid_columns(int k, int n) {
  auto [rows, cols] = grid_shape(k, n);
  std::vector<int> labels(rows * cols);
  for (Node u = 0; u < rows * cols; ++u) labels[u] = u % cols;
  return Partition::from_labels(labels);
}

Game poa_blocks(int k, std::int64_t b, std::int64_t b2, int n) {
  require(k >= 1 && b2 > 0 && b2 < b, "blocks need k >= 1 and 0 < b' < b");
  int part = static_cast<int>(k * b);
  int np = part * (n / part);
  require(np > 0, "n is too small for one block");
  Game g(np);
  for (Node u = 0; u < np; ++u)
    for (Node v = u + 1; v < np; ++v) g.set(u, v, u / part == v / part ? b : b2);
  declare(g, {fin(b2), fin(b)});
  return g;
}

Partition blocks_partition(int k, std::int64_t b, int n) {
  int part = static_cast<int>(k * b);
  int np = part * (n / part);
  std::vector<int> labels(np);
  for (Node u = 0; u < np; ++u) labels[u] = u / part;
  return Partition::from_labels(labels);
}

std::optional<ZeroNashVariant> parse_zero_nash_variant(const std::string& s) {
  if (s == "guards") return ZeroNashVariant::Guards;
  if (s == "circulant") return ZeroNashVariant::Circulant;
  return std::nullopt;
}

namespace {

struct ZeroNashShape {
  int half = 0;  // n' for guards
  int n = 0, d = 0;
};

ZeroNashShape zero_nash_shape(ZeroNashVariant v, std::int64_t b, std::int64_t a, std::int64_t R) {
  require(b > 0 && R >= 1, "zero-utility construction needs b > 0 and R >= 1");
  ZeroNashShape s;
  if (v == ZeroNashVariant::Guards) {
    // smallest n' with 2 b n'^2 >= R
    int m = 1;
    while (2 * b * m * m < R) ++m;
    s.half = m;
    s.n = 2 * m + 2;
  } else {
    require(a > 0, "circulant variant needs a > 0");
    std::int64_t m = (R + 2 * b * (b + a) - 1) / (2 * b * (b + a));
    m = std::max<std::int64_t>(m, 1);
    s.half = static_cast<int>(m);
    s.d = static_cast<int>(2 * m * b);
    s.n = static_cast<int>(2 * m * (b + a) + 1);
  }
  return s;
}

}  // namespace

Game poa_zero_nash(ZeroNashVariant variant, std::int64_t b, std::int64_t a, std::int64_t R) {
  auto s = zero_nash_shape(variant, b, a, R);
  if (variant == ZeroNashVariant::Guards) {
    int m = s.half;
    Node g1 = 2 * m, g2 = 2 * m + 1;
    Game g(s.n);
    for (Node u = 0; u < 2 * m; ++u)
      for (Node v = u + 1; v < 2 * m; ++v) g.set(u, v, (u < m) == (v < m) ? 0 : b);
    for (Node u = 0; u < 2 * m; ++u) {
      if (u < m) {
        g.set(u, g1, 0);
        g.set_enemies(u, g2);
      } else {
        g.set(u, g2, 0);
        g.set_enemies(u, g1);
      }
    }
    g.set(g1, g2, 0);
    declare(g, {kInf, fin(0), fin(b)});
    return g;
  }
  Game g(s.n);
  for (Node u = 0; u < s.n; ++u)
    for (Node v = u + 1; v < s.n; ++v) {
      int dist = std::min(v - u, s.n - (v - u));
      g.set(u, v, dist <= s.d / 2 ? -a : b);
    }
  declare(g, {fin(-a), fin(b)});
  return g;
}

Partition zero_nash_stable(ZeroNashVariant variant, std::int64_t b, std::int64_t a, std::int64_t R) {
  auto s = zero_nash_shape(variant, b, a, R);
  if (variant == ZeroNashVariant::Circulant) return Partition::single_group(s.n);
  std::vector<int> labels(s.n);
  for (Node u = 0; u < 2 * s.half; ++u) labels[u] = u < s.half ? 0 : 1;
  labels[2 * s.half] = 0;
  labels[2 * s.half + 1] = 1;
  return Partition::from_labels(labels);
}

Partition zero_nash_good(ZeroNashVariant variant, std::int64_t b, std::int64_t a, std::int64_t R) {
  auto s = zero_nash_shape(variant, b, a, R);
  std::vector<int> labels(s.n);
  if (variant == ZeroNashVariant::Guards) {
    for (Node u = 0; u < 2 * s.half; ++u) labels[u] = 0;
    labels[2 * s.half] = labels[2 * s.half + 1] = 1;
  } else {
    // i pairs with i + (n-1)/2, which is never within d/2 of it
    int half = (s.n - 1) / 2;
    for (Node u = 0; u < s.n - 1; ++u) labels[u] = u % half;
    labels[s.n - 1] = half;
  }
  return Partition::from_labels(labels);
}

Game uniform_2channel_counterexample(int p) {
  require(p > 28, "clique order must exceed 28");
  Game base = fig3_no3stable(2);
  int bn = base.n();
  std::vector<std::pair<Node, Node>> zero;
  std::vector<bool> has_zero(bn, false);
  for (Node u = 0; u < bn; ++u)
    for (Node v = u + 1; v < bn; ++v)
      if (base.weight(u, v) == fin(0)) {
        zero.push_back({u, v});
        has_zero[u] = has_zero[v] = true;
      }
  std::vector<std::vector<Node>> anchors;
  for (Node u = 0; u < bn; ++u)
    if (!has_zero[u]) anchors.push_back({u});
  for (auto [u, v] : zero) anchors.push_back({u, v});
  int n = bn + static_cast<int>(anchors.size()) * p;
  Game g = hostile_game(n);
  for (Node u = 0; u < bn; ++u)
    for (Node v = u + 1; v < bn; ++v) {
      Weight w = base.weight(u, v);
      g.set(u, v, w == fin(0) ? fin(1) : w);
    }
  Node next = bn;
  for (const auto& anc : anchors) {
    for (int i = 0; i < p; ++i) {
      for (int j = i + 1; j < p; ++j) g.set(next + i, next + j, 1);
      for (Node a : anc) g.set(next + i, a, 1);
    }
    next += p;
  }
  declare(g, {kInf, fin(1)});
  return g;
}

// ---------------------------------------------------------------- registry

namespace {

std::int64_t param(const Params& ps, const std::string& key, std::int64_t dflt) {
  auto it = ps.find(key);
  if (it == ps.end()) return dflt;
  try {
    std::size_t pos = 0;
    long long v = std::stoll(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw PreconditionError("parameter " + key + " must be an integer");
  }
}

std::vector<std::int64_t> int_list(const Params& ps, const std::string& key, std::vector<std::int64_t> dflt) {
  auto it = ps.find(key);
  if (it == ps.end()) return dflt;
  std::vector<std::int64_t> out;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw PreconditionError("parameter " + key + " must be a ':'-separated integer list");
    }
  }
  return out;
}

// "n=3" plus "edges=0-1:1-2".
SimpleGraph graph_param(const Params& ps) {
  SimpleGraph G;
  G.n = static_cast<int>(param(ps, "n", 3));
  auto it = ps.find("edges");
  std::string edges_text = it == ps.end() ? "0-1:1-2:0-2" : it->second;
  std::stringstream ss(edges_text);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    if (tok.empty()) continue;
    auto dash = tok.find('-');
    require(dash != std::string::npos, "edge must look like u-v");
    Node u = std::stoi(tok.substr(0, dash)), v = std::stoi(tok.substr(dash + 1));
    require(u >= 0 && v >= 0 && u < G.n && v < G.n && u != v, "edge endpoint out of range");
    G.edges.push_back({u, v});
  }
  return G;
}

Claim config_claim(int q, int k, bool expect) {
  std::string text = std::string(expect ? "some" : "no") + " " + std::to_string(k) + "-stable configuration with " +
                     std::to_string(q) + " channel" + (q > 1 ? "s" : "");
  return {text, [=](const Game& g, const SearchOptions& o) {
            auto h = HFunction::linear_eps(default_eps(g));
            auto c = exists_k_stable_config(g, h, q, k, o);
            return pass_if(c.has_value() == expect, c ? "found " + c->str() : "none");
          }};
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"fig1",           "fig2",          "fig3",      "extent_ab",      "negab",
          "chaotic4",       "chaotic_channels", "chaotic_schedule", "asym_partition", "gossip_3coloring",
          "poa_grid",       "poa_blocks",    "poa_zero_nash", "uniform_2channel"};
}

GalleryItem gallery_item(const std::string& name, const Params& ps) {
  GalleryItem it;
  it.name = name;
  if (name == "fig1") {
    it.game = fig1();
    it.claims.push_back(claim_global_utility(fig1_triangles(), 24));
    it.claims.push_back(claim_partition_stable(fig1_triangles(), 3, true));
    it.claims.push_back(claim_partition_stable(fig1_triangles(), 4, false));
    it.claims.push_back(claim_custom("connector 4-deviation lowers f from 24 to 20", [](const Game& g) {
      Partition p = fig1_triangles();
      Deviation d{fig1_connectors(), kNewGroup};
      if (!deviation_effect(g, p, d).improves()) return false;
      return global_utility(g, apply_deviation(g, p, d)) == ExtInt(20);
    }));
  } else if (name == "fig2") {
    it.game = fig2_rotation(param(ps, "w1", 2), param(ps, "w2", 3), param(ps, "w3", 4));
    it.claims.push_back(claim_exists_stable(2, false));
    it.claims.push_back(claim_exists_stable(1, true));
  } else if (name == "fig3") {
    it.game = fig3_no3stable(static_cast<int>(param(ps, "h", 2)));
    it.claims.push_back(claim_exists_stable(3, false));
    it.claims.push_back(claim_exists_stable(2, true));
  } else if (name == "extent_ab") {
    it.game = extent_ab(param(ps, "a", 1), param(ps, "b", 2));
    it.claims.push_back(claim_exists_stable(2, false));
    it.claims.push_back(claim_exists_stable(1, true));
    it.claims.push_back({"every 1-stable partition keeps the three cliques together",
                         [](const Game& g, const SearchOptions& o) {
                           auto all = all_k_stable(g, 1, false, o);
                           for (const auto& p : all)
                             for (Node base : {0, 3, 6})
                               if (p.group_of(base) != p.group_of(base + 1) || p.group_of(base) != p.group_of(base + 2))
                                 return pass_if(false, "split in " + p.str());
                           return pass_if(!all.empty(), std::to_string(all.size()) + " partitions");
                         }});
  } else if (name == "negab") {
    std::int64_t a = param(ps, "a", 1), b = param(ps, "b", 2);
    it.game = negab(a, b);
    NegabLayout L = negab_layout(a, b);
    it.claims.push_back(claim_custom("only -a and b appear", [a, b](const Game& g) {
      for (auto& w : g.used_weights())
        if (!(w == fin(-a) || w == fin(b))) return false;
      return true;
    }));
    it.claims.push_back(claim_custom("sizes s_i = t_i (b+a) + 3 (b+a+1)", [L](const Game& g) {
      int total = 3 * L.u_size;
      for (int i = 0; i < 3; ++i) {
        if (L.v_size[i] != L.t[i] * (L.a + L.b) + 3 * (L.a + L.b + 1)) return false;
        if (!(L.vm_size[i] < L.vp_size[i] && L.vp_size[i] < L.v_size[i])) return false;
        total += L.v_size[i];
      }
      return total == g.n() && L.t[0] <= L.t[1] && L.t[1] <= L.t[2];
    }));
    it.claims.push_back(claim_custom("hubs of U_i are pairwise twins", [L](const Game& g) {
      auto tw = find_twins(g);
      std::set<std::pair<Node, Node>> s(tw.begin(), tw.end());
      for (int i = 0; i < 3; ++i)
        for (int x = 0; x < L.u_size; ++x)
          for (int y = x + 1; y < L.u_size; ++y)
            if (!s.count({L.u_first[i] + x, L.u_first[i] + y})) return false;
      return true;
    }));
  } else if (name == "chaotic4") {
    it.game = chaotic4();
    it.claims.push_back(claim_exists_stable(2, false));
    it.claims.push_back(claim_exists_stable(1, true));
  } else if (name == "chaotic_channels") {
    int q = static_cast<int>(param(ps, "q", 2));
    it.game = chaotic_channels(q);
    for (int qq = 1; qq <= std::max(2, q); ++qq) it.claims.push_back(config_claim(qq, 2, qq != q));
  } else if (name == "chaotic_schedule") {
    auto ql = int_list(ps, "q_list", {1, 2});
    auto bad = int_list(ps, "bad", {2});
    std::vector<int> qv(ql.begin(), ql.end()), bv(bad.begin(), bad.end());
    it.game = chaotic_schedule(qv, bv);
    for (int q : qv) it.claims.push_back(config_claim(q, 2, std::find(bv.begin(), bv.end(), q) == bv.end()));
  } else if (name == "asym_partition") {
    auto S = int_list(ps, "S", {1, 2, 3});
    it.game = asym_partition_reduction(S);
    it.claims.push_back(claim_exists_stable(1, has_equal_split(S)));
  } else if (name == "gossip_3coloring") {
    SimpleGraph G = graph_param(ps);
    it.game = gossip_3coloring_reduction(G);
    bool col = is_3_colorable(G);
    it.claims.push_back({std::string(col ? "a" : "no") + " 2-stable gossip-stable three-group partition",
                         [G, col](const Game&, const SearchOptions&) {
                           auto p = gossip_restricted_search(G);
                           return pass_if(p.has_value() == col, p ? "found " + p->str() : "none");
                         }});
  } else if (name == "poa_grid") {
    int k = static_cast<int>(param(ps, "k", 2)), n = static_cast<int>(param(ps, "n", 36));
    std::int64_t b = param(ps, "b", 1), a = param(ps, "a", 1);
    it.game = poa_grid(k, n, b, a);
    Partition rows = grid_rows(k, n), cols = grid_columns(k, n);
    it.claims.push_back(claim_partition_stable(cols, k, true));
    int r = k + 1;
    Rational expect(static_cast<long long>(r) * (n / (r * r)) - 1, k);
    it.claims.push_back(claim_custom("f(rows) / f(columns) = " + rational_str(expect), [=](const Game& g) {
      auto w = witness_ratio(g, rows, cols);
      return w.kind == PriceOfAnarchy::Kind::Finite && w.ratio == expect;
    }));
  } else if (name == "poa_blocks") {
    int k = static_cast<int>(param(ps, "k", 2)), n = static_cast<int>(param(ps, "n", 16));
    std::int64_t b = param(ps, "b", 2), b2 = param(ps, "b2", 1);
    it.game = poa_blocks(k, b, b2, n);
    Partition blocks = blocks_partition(k, b, n);
    int np = blocks.n();
    it.claims.push_back(claim_partition_stable(blocks, k, true));
    it.claims.push_back(claim_global_utility(blocks, np * b * (k * b - 1)));
  } else if (name == "poa_zero_nash") {
    auto it_v = ps.find("variant");
    auto v = parse_zero_nash_variant(it_v == ps.end() ? "circulant" : it_v->second);
    require(v.has_value(), "variant must be guards or circulant");
    std::int64_t b = param(ps, "b", 1), a = param(ps, "a", 1), R = param(ps, "R", 8);
    it.game = poa_zero_nash(*v, b, a, R);
    Partition zero = zero_nash_stable(*v, b, a, R), good = zero_nash_good(*v, b, a, R);
    it.claims.push_back(claim_partition_stable(zero, 1, true));
    it.claims.push_back(claim_global_utility(zero, 0));
    it.claims.push_back(claim_custom("f(good) >= R", [good, R](const Game& g) {
      ExtInt f = global_utility(g, good);
      return f.finite() && f.value() >= R;
    }));
  } else if (name == "uniform_2channel") {
    int p = static_cast<int>(param(ps, "p", 29));
    it.game = uniform_2channel_counterexample(p);
    it.claims.push_back(claim_custom("node count 14 + 10 p", [p](const Game& g) { return g.n() == 14 + 10 * p; }));
    it.claims.push_back(claim_custom("weights are -inf and 1", [](const Game& g) {
      for (auto& w : g.used_weights())
        if (!(w == kInf || w == fin(1))) return false;
      return true;
    }));
  } else {
    throw PreconditionError("unknown gallery construction: " + name);
  }
  it.game.validate();
  return it;
}

}  // namespace ccg
