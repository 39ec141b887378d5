#include "ccg/game.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace ccg {

bool operator<(const Weight& a, const Weight& b) {
  auto rank = [](const Weight& w) {
    switch (w.kind) {
      case Weight::Kind::NegInf: return 0;
      case Weight::Kind::Finite: return 1;
      default: return 2;
    }
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  return a.kind == Weight::Kind::Finite && a.value < b.value;
}

std::string Weight::str() const {
  switch (kind) {
    case Kind::NegInf: return "-inf";
    case Kind::BestFriend: return "N";
    default: return std::to_string(value);
  }
}

Game::Game(int n, bool directed)
    : n_(n), directed_(directed), raw_(static_cast<std::size_t>(n) * n, Weight::finite(0)) {
  require(n >= 1, "game needs at least one node");
}

void Game::check_pair(Node u, Node v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw PreconditionError("node out of range");
  if (u == v) throw PreconditionError("self weight is not allowed");
}

void Game::set(Node u, Node v, Weight w) {
  check_pair(u, v);
  raw_[static_cast<std::size_t>(u) * n_ + v] = w;
  if (!directed_) raw_[static_cast<std::size_t>(v) * n_ + u] = w;
  dirty_ = true;
}

Weight Game::weight(Node u, Node v) const {
  check_pair(u, v);
  return raw_[static_cast<std::size_t>(u) * n_ + v];
}

std::int64_t Game::max_abs_finite() const {
  std::int64_t m = 0;
  bool any = false;
  for (const auto& w : raw_) {
    if (w.is_finite() && w.value != 0) {
      any = true;
      m = std::max(m, w.value < 0 ? -w.value : w.value);
    }
  }
  return any ? m : 0;
}

void Game::refresh() const {
  if (!dirty_) return;
  std::int64_t m = max_abs_finite();
  if (m == 0) m = 1;
  bf_value_ = static_cast<std::int64_t>(n_) * m + 1;
  resolved_.assign(raw_.size(), 0);
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    const auto& w = raw_[i];
    switch (w.kind) {
      case Weight::Kind::NegInf: resolved_[i] = kNegInf; break;
      case Weight::Kind::BestFriend: resolved_[i] = bf_value_; break;
      default: resolved_[i] = w.value;
    }
  }
  for (int u = 0; u < n_; ++u) resolved_[static_cast<std::size_t>(u) * n_ + u] = 0;
  dirty_ = false;
}

std::int64_t Game::best_friend_value() const {
  refresh();
  return bf_value_;
}

std::int64_t Game::max_positive() const {
  refresh();
  std::int64_t m = 0;
  for (auto x : resolved_) m = std::max(m, x);
  return m;
}

void Game::declare_weight_set(std::vector<Weight> ws) {
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  weight_set_ = std::move(ws);
}

std::vector<Weight> Game::used_weights() const {
  std::vector<Weight> out;
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (u != v) out.push_back(raw_[static_cast<std::size_t>(u) * n_ + v]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Game::validate() const {
  if (!directed_ && !is_symmetric()) throw InputError("weights: symmetric game has asymmetric entries");
  if (weight_set_.empty()) return;
  for (const auto& w : used_weights()) {
    if (w == Weight::finite(0)) continue;
    if (std::find(weight_set_.begin(), weight_set_.end(), w) == weight_set_.end())
      throw InputError("weights: value " + w.str() + " not in weight_set");
  }
}

bool Game::is_symmetric() const {
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!(raw_[static_cast<std::size_t>(u) * n_ + v] == raw_[static_cast<std::size_t>(v) * n_ + u])) return false;
  return true;
}

bool Game::is_uniform() const {
  std::int64_t pos = 0;
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v) {
      if (u == v) continue;
      std::int64_t x = w(u, v);
      if (x == kNegInf) continue;
      if (x <= 0) return false;
      if (pos == 0) pos = x;
      if (x != pos) return false;
    }
  return true;
}

bool Game::is_empty_conflict_uniform() const {
  if (!is_uniform()) return false;
  for (int u = 0; u < n_; ++u)
    for (int v = 0; v < n_; ++v)
      if (u != v && w(u, v) == kNegInf) return false;
  return true;
}

bool operator==(const Game& a, const Game& b) {
  return a.n_ == b.n_ && a.directed_ == b.directed_ && a.raw_ == b.raw_ && a.weight_set_ == b.weight_set_;
}

Game uniform_game(int n, const std::vector<std::pair<Node, Node>>& conflicts) {
  Game g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set(u, v, 1);
  for (auto [u, v] : conflicts) g.set_enemies(u, v);
  g.declare_weight_set({Weight::neg_inf(), Weight::finite(1)});
  return g;
}

// ---------------------------------------------------------------- Partition

Partition::Partition(int n) : n_(n) {
  groups_.resize(n);
  for (int i = 0; i < n; ++i) groups_[i] = {i};
  canonicalize();
}

Partition::Partition(int n, std::vector<std::vector<Node>> groups) : n_(n), groups_(std::move(groups)) {
  canonicalize();
}

Partition Partition::from_labels(const std::vector<int>& labels) {
  int n = static_cast<int>(labels.size());
  std::vector<std::vector<Node>> gs;
  std::vector<int> remap;
  for (int u = 0; u < n; ++u) {
    int l = labels[u];
    if (l < 0) throw PreconditionError("negative group label");
    if (static_cast<std::size_t>(l) >= remap.size()) remap.resize(l + 1, -1);
    if (remap[l] < 0) {
      remap[l] = static_cast<int>(gs.size());
      gs.emplace_back();
    }
    gs[remap[l]].push_back(u);
  }
  return Partition(n, std::move(gs));
}

Partition Partition::single_group(int n) {
  std::vector<Node> all(n);
  std::iota(all.begin(), all.end(), 0);
  return Partition(n, {all});
}

void Partition::canonicalize() {
  std::erase_if(groups_, [](const auto& g) { return g.empty(); });
  for (auto& g : groups_) std::sort(g.begin(), g.end());
  std::sort(groups_.begin(), groups_.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  label_.assign(n_, -1);
  for (std::size_t g = 0; g < groups_.size(); ++g)
    for (Node u : groups_[g]) {
      if (u < 0 || u >= n_) throw PreconditionError("partition node out of range");
      if (label_[u] >= 0) throw PreconditionError("partition groups overlap");
      label_[u] = static_cast<int>(g);
    }
  for (int u = 0; u < n_; ++u)
    if (label_[u] < 0) throw PreconditionError("partition does not cover every node");
}

std::string Partition::key() const {
  // Two bytes per node so partitions with more than 255 groups still work.
  std::string k(2 * static_cast<std::size_t>(n_), '\0');
  std::vector<int> first(groups_.size(), -1);
  int next = 0;
  for (int u = 0; u < n_; ++u) {
    int g = label_[u];
    if (first[g] < 0) first[g] = next++;
    k[2 * u] = static_cast<char>(first[g] & 0xff);
    k[2 * u + 1] = static_cast<char>(first[g] >> 8);
  }
  return k;
}

std::size_t PartitionHash::operator()(const Partition& p) const { return std::hash<std::string>{}(p.key()); }

std::string Partition::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (g) os << ',';
    os << '{';
    for (std::size_t i = 0; i < groups_[g].size(); ++i) os << (i ? "," : "") << groups_[g][i];
    os << '}';
  }
  os << ']';
  return os.str();
}

Partition canonicalize(const Partition& p) { return p; }

// --------------------------------------------------------- PartitionVector

std::strong_ordering operator<=>(const PartitionVector& a, const PartitionVector& b) {
  int n = std::max(a.n(), b.n());
  for (int i = n; i >= 1; --i) {
    int x = i <= a.n() ? a.count[i] : 0;
    int y = i <= b.n() ? b.count[i] : 0;
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

std::vector<int> PartitionVector::sizes() const {
  std::vector<int> s;
  for (int i = n(); i >= 1; --i)
    for (int c = 0; c < count[i]; ++c) s.push_back(i);
  return s;
}

PartitionVector PartitionVector::from_sizes(int n, const std::vector<int>& sizes) {
  PartitionVector pv;
  pv.count.assign(n + 1, 0);
  for (int s : sizes) {
    if (s < 1 || s > n) throw PreconditionError("group size out of range");
    ++pv.count[s];
  }
  return pv;
}

std::string PartitionVector::str() const {
  std::ostringstream os;
  os << '(';
  for (int i = n(); i >= 1; --i) os << count[i] << (i > 1 ? "," : "");
  os << ')';
  return os.str();
}

PartitionVector partition_vector(const Partition& p) {
  PartitionVector pv;
  pv.count.assign(p.n() + 1, 0);
  for (const auto& g : p.groups()) ++pv.count[g.size()];
  return pv;
}

// ---------------------------------------------------------------- utilities

ExtInt utility(const Game& g, const Partition& p, Node u) {
  if (u < 0 || u >= g.n()) throw PreconditionError("unknown node");
  if (p.n() != g.n()) throw PreconditionError("partition and game sizes differ");
  ExtInt s = 0;
  const std::int64_t* r = g.row(u);
  for (Node v : p.group(p.group_of(u))) {
    if (v == u) continue;
    if (r[v] == kNegInf) return ExtInt::neg_inf();
    s += ExtInt(r[v]);
  }
  return s;
}

std::vector<ExtInt> utilities(const Game& g, const Partition& p) {
  std::vector<ExtInt> out(g.n());
  for (int u = 0; u < g.n(); ++u) out[u] = utility(g, p, u);
  return out;
}

ExtInt global_utility(const Game& g, const Partition& p) {
  ExtInt s = 0;
  for (int u = 0; u < g.n(); ++u) s += utility(g, p, u);
  return s;
}

std::vector<std::vector<Node>> friendship_graph(const Game& g) {
  std::vector<std::vector<Node>> adj(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v)
      if (u != v && g.w(u, v) > 0 && g.w(v, u) > 0) adj[u].push_back(v);
  return adj;
}

std::optional<int> girth(const std::vector<std::vector<Node>>& adj) {
  int n = static_cast<int>(adj.size());
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(n), parent(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> q{s};
    dist[s] = 0;
    parent[s] = -1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          q.push_back(y);
        } else if (parent[x] != y) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

std::vector<std::pair<Node, Node>> find_twins(const Game& g) {
  std::vector<std::pair<Node, Node>> out;
  int n = g.n();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (g.w(u, v) <= 0 || g.w(v, u) <= 0) continue;
      bool same = true;
      for (int x = 0; x < n && same; ++x) {
        if (x == u || x == v) continue;
        same = g.w(u, x) == g.w(v, x) && g.w(x, u) == g.w(x, v);
      }
      if (same) out.emplace_back(u, v);
    }
  return out;
}

std::vector<std::vector<Node>> twin_classes(const Game& g) {
  int n = g.n();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [u, v] : find_twins(g)) parent[find(u)] = find(v);
  std::vector<std::vector<Node>> cls;
  std::vector<int> idx(n, -1);
  for (int u = 0; u < n; ++u) {
    int r = find(u);
    if (idx[r] < 0) {
      idx[r] = static_cast<int>(cls.size());
      cls.emplace_back();
    }
    cls[idx[r]].push_back(u);
  }
  return cls;
}

}  // namespace ccg
