#include "ccg/stability.hpp"

#include <map>
#include <unordered_map>
#include <unordered_set>

namespace ccg {

bool is_k_stable(const Game& g, const Partition& p, int k, bool gossip) {
  if (first_deviation(g, p, k)) return false;
  return !gossip || enumerate_gossip(g, p).empty();
}

void for_each_feasible_partition(const Game& g, const std::function<bool(const std::vector<int>&)>& visit,
                                 const SearchOptions& opts) {
  int n = g.n();
  std::vector<std::vector<Node>> units;
  if (opts.merge_twins && !g.directed())
    units = twin_classes(g);
  else
    for (Node u = 0; u < n; ++u) units.push_back({u});
  int m = static_cast<int>(units.size());
  require(m <= 64, "feasible partition search supports at most 64 units");
  std::vector<std::uint64_t> conflict(m, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (Node u : units[a])
        for (Node v : units[b])
          if (u != v && g.enemies(u, v)) conflict[a] |= std::uint64_t{1} << b;

  std::vector<int> unit_label(m, -1);
  std::vector<std::uint64_t> block;  // unit masks
  std::vector<int> labels(n), remap;
  std::uint64_t visited = 0;
  bool stop = false;

  std::function<void(int)> rec = [&](int i) {
    if (stop) return;
    if (i == m) {
      if (++visited > opts.budget) throw SearchTooLarge("feasible partition budget exceeded");
      // Expand units to nodes and renumber blocks by first node.
      for (int a = 0; a < m; ++a)
        for (Node u : units[a]) labels[u] = unit_label[a];
      remap.assign(block.size(), -1);
      int next = 0;
      for (Node u = 0; u < n; ++u) {
        int& r = remap[labels[u]];
        if (r < 0) r = next++;
        labels[u] = r;
      }
      if (!visit(labels)) stop = true;
      return;
    }
    std::uint64_t bit = std::uint64_t{1} << i;
    for (std::size_t b = 0; b < block.size() && !stop; ++b) {
      if (block[b] & conflict[i]) continue;
      block[b] |= bit;
      unit_label[i] = static_cast<int>(b);
      rec(i + 1);
      block[b] &= ~bit;
    }
    if (stop) return;
    block.push_back(bit);
    unit_label[i] = static_cast<int>(block.size()) - 1;
    rec(i + 1);
    block.pop_back();
  };
  rec(0);
}

std::uint64_t count_feasible_partitions(const Game& g, const SearchOptions& opts) {
  std::uint64_t c = 0;
  for_each_feasible_partition(
      g,
      [&](const std::vector<int>&) {
        ++c;
        return true;
      },
      opts);
  return c;
}

std::optional<Partition> exists_k_stable(const Game& g, int k, bool gossip, const SearchOptions& opts) {
  std::optional<Partition> found;
  for_each_feasible_partition(
      g,
      [&](const std::vector<int>& labels) {
        Partition p = Partition::from_labels(labels);
        if (is_k_stable(g, p, k, gossip)) {
          found = std::move(p);
          return false;
        }
        return true;
      },
      opts);
  return found;
}

std::vector<Partition> all_k_stable(const Game& g, int k, bool gossip, const SearchOptions& opts) {
  std::vector<Partition> out;
  for_each_feasible_partition(
      g,
      [&](const std::vector<int>& labels) {
        Partition p = Partition::from_labels(labels);
        if (is_k_stable(g, p, k, gossip)) out.push_back(std::move(p));
        return true;
      },
      opts);
  return out;
}

namespace {

Partition representative(const PartitionVector& lam) {
  std::vector<std::vector<Node>> groups;
  Node next = 0;
  for (int s : lam.sizes()) {
    std::vector<Node> grp;
    for (int i = 0; i < s; ++i) grp.push_back(next++);
    groups.push_back(std::move(grp));
  }
  return Partition(lam.n(), std::move(groups));
}

// Node identities are interchangeable in the conflict-free uniform game, so
// the longest remaining sequence depends on the partition vector only.
LongestResult longest_by_vector(const Game& g, int k, const SearchOptions& opts) {
  std::map<std::vector<int>, std::pair<std::uint64_t, std::vector<int>>> memo;
  std::function<std::uint64_t(const PartitionVector&)> dfs = [&](const PartitionVector& lam) -> std::uint64_t {
    if (auto it = memo.find(lam.count); it != memo.end()) return it->second.first;
    if (memo.size() >= opts.budget) throw SearchTooLarge("longest sequence state budget exceeded");
    Partition rep = representative(lam);
    std::map<std::vector<int>, PartitionVector> succ;
    for_each_deviation(g, rep, k, [&](const Deviation& d) {
      auto v = partition_vector(apply_deviation(g, rep, d));
      succ.emplace(v.count, v);
      return true;
    });
    std::uint64_t best = 0;
    std::vector<int> next;
    for (auto& [key, v] : succ) {
      std::uint64_t l = 1 + dfs(v);
      if (l > best) {
        best = l;
        next = key;
      }
    }
    memo[lam.count] = {best, next};
    return best;
  };
  Partition start(g.n());
  LongestResult res;
  res.length = dfs(partition_vector(start));
  res.witness.initial = start;
  Partition cur = start;
  for (int i = 0;; ++i) {
    const auto& next = memo.at(partition_vector(cur).count).second;
    if (next.empty()) break;
    std::optional<Partition> after;
    std::optional<Deviation> dev;
    for_each_deviation(g, cur, k, [&](const Deviation& d) {
      Partition q = apply_deviation(g, cur, d);
      if (partition_vector(q).count != next) return true;
      after = std::move(q);
      dev = d;
      return false;
    });
    res.witness.steps.push_back(record_step(g, cur, *dev, *after, i));
    cur = std::move(*after);
  }
  res.witness.num_steps = res.witness.steps.size();
  res.witness.final = cur;
  res.witness.status = Status::Stable;
  return res;
}

}  // namespace

LongestResult longest_sequence(const Game& g, int k, const SearchOptions& opts) {
  require(k >= 1, "k must be at least 1");
  if (g.is_empty_conflict_uniform()) return longest_by_vector(g, k, opts);

  struct Entry {
    std::optional<std::uint64_t> len;
    Deviation best;
    bool has_next = false;
  };
  std::unordered_map<std::string, Entry> memo;
  std::unordered_set<std::string> on_stack;
  std::function<std::optional<std::uint64_t>(const Partition&)> dfs =
      [&](const Partition& p) -> std::optional<std::uint64_t> {
    std::string key = p.key();
    if (on_stack.count(key)) return std::nullopt;
    if (auto it = memo.find(key); it != memo.end()) return it->second.len;
    if (memo.size() >= opts.budget) throw SearchTooLarge("longest sequence state budget exceeded");
    on_stack.insert(key);
    Entry e;
    e.len = 0;
    for (const auto& d : enumerate_deviations(g, p, k)) {
      auto l = dfs(apply_deviation(g, p, d));
      if (!l) {
        e.len.reset();
        break;
      }
      if (*l + 1 > *e.len) {
        e.len = *l + 1;
        e.best = d;
        e.has_next = true;
      }
    }
    on_stack.erase(key);
    memo[key] = e;
    return e.len;
  };
  Partition start(g.n());
  LongestResult res;
  res.length = dfs(start);
  res.witness.initial = start;
  Partition cur = start;
  if (res.length) {
    for (int i = 0;; ++i) {
      const Entry& e = memo.at(cur.key());
      if (!e.has_next) break;
      Partition q = apply_deviation(g, cur, e.best);
      res.witness.steps.push_back(record_step(g, cur, e.best, q, i));
      cur = std::move(q);
    }
    res.witness.status = Status::Stable;
  } else {
    res.witness.status = Status::CycleDetected;
  }
  res.witness.num_steps = res.witness.steps.size();
  res.witness.final = cur;
  return res;
}

std::uint64_t L1_formula(int n) {
  require(n >= 1, "n must be positive");
  std::uint64_t m = 1;
  while ((m + 1) * (m + 2) / 2 <= static_cast<std::uint64_t>(n)) ++m;
  std::uint64_t r = n - m * (m + 1) / 2;
  // 2 * C(m+1, 3) + m r
  return (m + 1) * m * (m - 1) / 3 + m * r;
}

std::uint64_t L_empty(int k, int n) { return *longest_sequence(uniform_game(n), k).length; }

std::uint64_t integer_partition_count(int n) {
  require(n >= 0, "n must be non-negative");
  // Euler's pentagonal recurrence.
  std::vector<std::uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (int i = 1; i <= n; ++i) {
    __int128 s = 0;
    for (int j = 1;; ++j) {
      int g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
      if (g1 > i) break;
      int sign = (j % 2) ? 1 : -1;
      s += sign * static_cast<__int128>(p[i - g1]);
      if (g2 <= i) s += sign * static_cast<__int128>(p[i - g2]);
    }
    if (s > static_cast<__int128>(UINT64_MAX)) throw std::overflow_error("partition count overflow");
    p[i] = static_cast<std::uint64_t>(s);
  }
  return p[n];
}

}  // namespace ccg
