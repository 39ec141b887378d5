#include "ccg/lattice.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace ccg {

IntegerPartition to_integer_partition(const PartitionVector& v) { return v.sizes(); }

PartitionVector to_partition_vector(const IntegerPartition& q, int n) { return PartitionVector::from_sizes(n, q); }

std::vector<IntegerPartition> all_integer_partitions(int n) {
  std::vector<IntegerPartition> out;
  IntegerPartition cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

namespace {

int at(const IntegerPartition& q, std::size_t i) { return i < q.size() ? q[i] : 0; }

void trim(IntegerPartition& q) {
  while (!q.empty() && q.back() == 0) q.pop_back();
}

bool non_increasing(const IntegerPartition& q) {
  for (std::size_t i = 1; i < q.size(); ++i)
    if (q[i] > q[i - 1]) return false;
  return true;
}

}  // namespace

bool dominates(const IntegerPartition& a, const IntegerPartition& b) {
  long sa = 0, sb = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    sa += at(a, i);
    sb += at(b, i);
    if (sa < sb) return false;
  }
  return true;
}

bool covers(const IntegerPartition& a, const IntegerPartition& b) {
  std::size_t len = std::max(a.size(), b.size());
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < len; ++i)
    if (at(a, i) != at(b, i)) diff.push_back(i);
  if (diff.size() != 2) return false;
  std::size_t j = diff[0], k = diff[1];
  if (at(a, j) != at(b, j) + 1 || at(a, k) != at(b, k) - 1) return false;
  return k == j + 1 || at(b, j) == at(b, k);
}

std::vector<IntegerPartition> covering_successors(const IntegerPartition& q) {
  std::vector<IntegerPartition> out;
  for (std::size_t k = 1; k < q.size(); ++k)
    for (std::size_t j = 0; j < k; ++j) {
      if (!(k == j + 1 || q[j] == q[k])) continue;
      IntegerPartition c = q;
      ++c[j];
      --c[k];
      if (!non_increasing(c)) continue;
      trim(c);
      out.push_back(std::move(c));
    }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<IntegerPartition> covering_predecessors(const IntegerPartition& q) {
  std::vector<IntegerPartition> out;
  for (std::size_t k = 1; k <= q.size(); ++k)
    for (std::size_t j = 0; j < k; ++j) {
      IntegerPartition c = q;
      c.resize(q.size() + 1, 0);
      --c[j];
      ++c[k];
      if (c[j] < 0 || !non_increasing(c)) continue;
      trim(c);
      if (covers(q, c)) out.push_back(std::move(c));
    }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::map<IntegerPartition, std::pair<std::uint64_t, IntegerPartition>> chain_table(int n) {
  std::map<IntegerPartition, std::pair<std::uint64_t, IntegerPartition>> memo;
  std::function<std::uint64_t(const IntegerPartition&)> dfs = [&](const IntegerPartition& q) -> std::uint64_t {
    if (auto it = memo.find(q); it != memo.end()) return it->second.first;
    std::uint64_t best = 0;
    IntegerPartition next;
    for (auto& s : covering_successors(q)) {
      std::uint64_t l = 1 + dfs(s);
      if (l > best) {
        best = l;
        next = s;
      }
    }
    memo[q] = {best, next};
    return best;
  };
  dfs(IntegerPartition(n, 1));
  return memo;
}

}  // namespace

std::uint64_t longest_chain(int n) {
  require(n >= 1, "n must be positive");
  return chain_table(n).at(IntegerPartition(n, 1)).first;
}

std::vector<IntegerPartition> longest_chain_path(int n) {
  require(n >= 1, "n must be positive");
  auto memo = chain_table(n);
  std::vector<IntegerPartition> path{IntegerPartition(n, 1)};
  while (!memo.at(path.back()).second.empty()) path.push_back(memo.at(path.back()).second);
  return path;
}

namespace {

Partition realize_vector(const IntegerPartition& q, int n) {
  std::vector<std::vector<Node>> groups;
  Node next = 0;
  for (int s : q) {
    std::vector<Node> g;
    for (int i = 0; i < s; ++i) g.push_back(next++);
    groups.push_back(std::move(g));
  }
  require(next == n, "integer partition does not sum to n");
  return Partition(n, std::move(groups));
}

}  // namespace

bool deviation_reaches(const IntegerPartition& from, const IntegerPartition& to, int n) {
  Game g = uniform_game(n);
  std::set<IntegerPartition> seen{from};
  std::deque<IntegerPartition> queue{from};
  while (!queue.empty()) {
    IntegerPartition q = queue.front();
    queue.pop_front();
    if (q == to) return true;
    Partition rep = realize_vector(q, n);
    for (const auto& d : enumerate_deviations(g, rep, 1)) {
      auto next = to_integer_partition(partition_vector(apply_deviation(g, rep, d)));
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return false;
}

std::vector<ElementaryMove> decompose_to_covering_steps(const Partition& p, const Deviation& d) {
  require(d.coalition.size() == 1, "decomposition takes a 1-deviation");
  Game g = uniform_game(p.n());
  IntegerPartition goal = to_integer_partition(partition_vector(apply_deviation(g, p, d)));
  std::vector<ElementaryMove> out;
  Partition cur = p;
  for (;;) {
    IntegerPartition q = to_integer_partition(partition_vector(cur));
    if (q == goal) break;
    std::optional<IntegerPartition> step;
    for (auto& s : covering_successors(q))
      if (dominates(goal, s)) {
        step = s;
        break;
      }
    if (!step) throw std::logic_error("no covering step towards the goal vector");
    // Sizes that change: one part grows from `grow`, another shrinks from `shrink`.
    int grow = -1, shrink = -1;
    for (std::size_t i = 0; i < std::max(q.size(), step->size()); ++i) {
      if (at(*step, i) == at(q, i) + 1) grow = at(q, i);
      if (at(*step, i) == at(q, i) - 1) shrink = at(q, i);
    }
    int from = -1, to = -1;
    for (std::size_t gi = 0; gi < cur.num_groups(); ++gi) {
      int sz = static_cast<int>(cur.group(gi).size());
      if (from < 0 && sz == shrink) from = static_cast<int>(gi);
    }
    for (std::size_t gi = 0; gi < cur.num_groups(); ++gi) {
      int sz = static_cast<int>(cur.group(gi).size());
      if (to < 0 && sz == grow && static_cast<int>(gi) != from) to = static_cast<int>(gi);
    }
    if (from < 0 || to < 0) throw std::logic_error("covering step has no realization");
    Deviation e{{cur.group(from).front()}, to};
    Partition next = apply_deviation(g, cur, e);
    out.push_back({e, next});
    cur = std::move(next);
  }
  return out;
}

}  // namespace ccg
