#pragma once
// Brute-force reference implementations. They share nothing with the library
// beyond Game (for weights) and ExtInt, and favour obviousness over speed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "ccg/game.hpp"

namespace oracle {

using ccg::ExtInt;
using ccg::Game;
using Labels = std::vector<int>;

// Every set partition of 0..n-1 as a restricted growth string.
inline std::vector<Labels> set_partitions(int n) {
  std::vector<Labels> out;
  Labels lab(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      out.push_back(lab);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      lab[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

inline ExtInt weight(const Game& g, int u, int v) {
  std::int64_t w = g.w(u, v);
  return w == ccg::kNegInf ? ExtInt::neg_inf() : ExtInt(w);
}

inline ExtInt utility(const Game& g, const Labels& lab, int u) {
  ExtInt s = 0;
  for (int v = 0; v < g.n(); ++v)
    if (v != u && lab[v] == lab[u]) s += weight(g, u, v);
  return s;
}

inline ExtInt global(const Game& g, const Labels& lab) {
  ExtInt s = 0;
  for (int u = 0; u < g.n(); ++u) s += utility(g, lab, u);
  return s;
}

struct Move {
  std::vector<int> coalition;   // sorted
  std::vector<int> target_set;  // members of the target group before the move; empty for a new group
  friend bool operator<(const Move& a, const Move& b) {
    return std::tie(a.coalition, a.target_set) < std::tie(b.coalition, b.target_set);
  }
  friend bool operator==(const Move& a, const Move& b) = default;
};

// All improving moves of at most k nodes into one existing or new group. A
// member already inside the target stays but must gain too; someone moves.
inline std::set<Move> moves(const Game& g, const Labels& lab, int k) {
  int n = g.n();
  std::set<Move> out;
  std::set<int> labels(lab.begin(), lab.end());
  int fresh = *labels.rbegin() + 1;
  for (std::uint32_t S = 1; S < (1u << n); ++S) {
    if (__builtin_popcount(S) > k) continue;
    std::vector<int> members;
    for (int u = 0; u < n; ++u)
      if (S >> u & 1) members.push_back(u);
    std::vector<int> targets(labels.begin(), labels.end());
    targets.push_back(fresh);
    for (int t : targets) {
      bool someone_moves = false;
      for (int u : members) someone_moves |= lab[u] != t;
      if (!someone_moves) continue;
      Labels after = lab;
      for (int u : members) after[u] = t;
      bool all_gain = true;
      for (int u : members) all_gain &= utility(g, after, u) > utility(g, lab, u);
      if (!all_gain) continue;
      Move m{members, {}};
      for (int v = 0; v < n; ++v)
        if (lab[v] == t) m.target_set.push_back(v);
      out.insert(m);
    }
  }
  return out;
}

inline bool is_k_stable(const Game& g, const Labels& lab, int k) { return moves(g, lab, k).empty(); }

inline bool exists_k_stable(const Game& g, int k) {
  for (const auto& lab : set_partitions(g.n()))
    if (is_k_stable(g, lab, k)) return true;
  return false;
}

inline ExtInt max_global(const Game& g) {
  ExtInt best = ExtInt::neg_inf();
  for (const auto& lab : set_partitions(g.n())) best = std::max(best, global(g, lab));
  return best;
}

// Minimum global utility over k-stable partitions; false when none exists.
inline bool worst_stable(const Game& g, int k, ExtInt& worst) {
  bool any = false;
  for (const auto& lab : set_partitions(g.n())) {
    if (!is_k_stable(g, lab, k)) continue;
    ExtInt f = global(g, lab);
    if (!any || f < worst) worst = f;
    any = true;
  }
  return any;
}

// ---------------------------------------------------------------- integer partitions

inline std::vector<std::vector<int>> integer_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline bool dominates(const std::vector<int>& a, const std::vector<int>& b) {
  long long sa = 0, sb = 0;
  std::size_t len = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa < sb) return false;
  }
  return true;
}

// a covers b: a strictly dominates b with nothing strictly in between.
inline bool covers(const std::vector<int>& a, const std::vector<int>& b, const std::vector<std::vector<int>>& all) {
  if (a == b || !dominates(a, b)) return false;
  for (const auto& c : all)
    if (c != a && c != b && dominates(a, c) && dominates(c, b)) return false;
  return true;
}

// Longest run of improving single moves on the conflict-free uniform game
// with n nodes, from all singletons. State: sorted group sizes.
inline long long longest_uniform_1(int n) {
  std::map<std::vector<int>, long long> memo;
  std::function<long long(const std::vector<int>&)> rec = [&](const std::vector<int>& sizes) -> long long {
    auto it = memo.find(sizes);
    if (it != memo.end()) return it->second;
    long long best = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i)
      for (std::size_t j = 0; j < sizes.size(); ++j) {
        // a node of a group of size a gains by joining a group of size b >= a
        if (i == j || sizes[j] < sizes[i]) continue;
        std::vector<int> next = sizes;
        next[i]--;
        next[j]++;
        next.erase(std::remove(next.begin(), next.end(), 0), next.end());
        std::sort(next.rbegin(), next.rend());
        best = std::max(best, 1 + rec(next));
      }
    memo[sizes] = best;
    return best;
  };
  return rec(std::vector<int>(n, 1));
}

// ---------------------------------------------------------------- misc

inline bool equal_split(const std::vector<std::int64_t>& S) {
  std::int64_t total = 0;
  for (auto s : S) total += s;
  for (std::uint32_t m = 0; m < (1u << S.size()); ++m) {
    std::int64_t part = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
      if (m >> i & 1) part += S[i];
    if (2 * part == total) return true;
  }
  return false;
}

inline bool three_colorable(int n, const std::vector<std::pair<int, int>>& edges) {
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<int> c(n);
    int x = code;
    for (int i = 0; i < n; ++i, x /= 3) c[i] = x % 3;
    bool ok = true;
    for (auto [u, v] : edges) ok &= c[u] != c[v];
    if (ok) return true;
  }
  return false;
}

// Symmetric (or directed) game with weights drawn from the pool.
inline Game random_game(std::mt19937_64& rng, int n, const std::vector<ccg::Weight>& pool, bool directed = false) {
  Game g(n, directed);
  for (int u = 0; u < n; ++u)
    for (int v = directed ? 0 : u + 1; v < n; ++v)
      if (u != v) g.set(u, v, pool[rng() % pool.size()]);
  return g;
}

inline std::vector<ccg::Weight> pool(std::initializer_list<std::int64_t> finite, bool neg_inf) {
  std::vector<ccg::Weight> out;
  for (auto x : finite) out.push_back(ccg::Weight::finite(x));
  if (neg_inf) out.push_back(ccg::Weight::neg_inf());
  return out;
}

}  // namespace oracle
