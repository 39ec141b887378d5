#include "ccg/extensions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ccg {

namespace {

// Sorted tuples of size 1..k in lexicographic order, prefixes first.
bool for_each_coalition(int n, int k, const std::function<bool(const std::vector<Node>&)>& visit) {
  std::vector<Node> cur;
  std::function<bool(Node)> rec = [&](Node from) {
    for (Node u = from; u < n; ++u) {
      cur.push_back(u);
      if (!visit(cur)) return false;
      if (static_cast<int>(cur.size()) < k && !rec(u + 1)) return false;
      cur.pop_back();
    }
    return true;
  };
  return rec(0);
}

constexpr std::int64_t kHugeGain = std::int64_t{1} << 60;

}  // namespace

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

// ---------------------------------------------------------------- ExtRational

const Rational& ExtRational::value() const {
  if (neg_inf_) throw std::domain_error("value() of -inf");
  return v_;
}

ExtRational& ExtRational::operator+=(const ExtRational& o) {
  if (neg_inf_ || o.neg_inf_) {
    neg_inf_ = true;
    v_ = 0;
  } else {
    v_ += o.v_;
  }
  return *this;
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
  return a.v_ == b.v_;
}

bool operator<(const ExtRational& a, const ExtRational& b) {
  if (a.neg_inf_) return !b.neg_inf_;
  if (b.neg_inf_) return false;
  return a.v_ < b.v_;
}

std::string ExtRational::str() const { return neg_inf_ ? "-inf" : rational_str(v_); }

// ---------------------------------------------------------------- HFunction

HFunction HFunction::indicator() { return {}; }

HFunction HFunction::linear_eps(Rational eps) {
  require(eps >= 0, "eps must be non-negative");
  HFunction h;
  h.family = Family::LinearEps;
  h.eps = eps;
  h.label = "linear_eps(" + rational_str(eps) + ")";
  return h;
}

HFunction HFunction::custom(std::string label, std::function<Rational(int, std::int64_t)> fn) {
  HFunction h;
  h.family = Family::Custom;
  h.fn = std::move(fn);
  h.label = std::move(label);
  return h;
}

Rational HFunction::operator()(int g, std::int64_t w) const {
  if (g <= 0) return 0;
  switch (family) {
    case Family::Indicator: return w;
    case Family::LinearEps: return (1 + eps * (g - 1)) * w;
    default: return fn(g, w);
  }
}

ExtRational HFunction::eval(int g, std::int64_t w) const {
  if (g <= 0) return ExtRational(0);
  if (w == kNegInf) return ExtRational::neg_inf();
  return (*this)(g, w);
}

std::string HFunction::str() const { return label; }

Rational default_eps(const Game& g) { return Rational(1, 4 * g.best_friend_value()); }

bool check_h_properties(const HFunction& h, int max_g, std::vector<std::int64_t> ws) {
  ws.push_back(0);
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  for (auto w : ws) {
    if (h(0, w) != 0 || h(1, w) != w) return false;
    for (int g = 1; g <= max_g; ++g)
      if (w >= 0 && h(g, w) < h(g - 1, w)) return false;
  }
  for (int g = 0; g <= max_g; ++g) {
    if (h(g, 0) != 0) return false;
    for (std::size_t i = 1; i < ws.size(); ++i)
      if (h(g, ws[i]) < h(g, ws[i - 1])) return false;
  }
  return true;
}

bool is_concave(const HFunction& h, int max_g, const std::vector<std::int64_t>& ws) {
  for (auto w : ws) {
    if (w < 0) continue;
    for (int g = 2; g <= max_g; ++g)
      if (h(g, w) - h(g - 1, w) > h(g - 1, w) - h(g - 2, w)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Configuration

Configuration::Configuration(int n, int q) : n_(n), q_(q) {
  require(n >= 1 && q >= 1, "configuration needs n >= 1 and q >= 1");
  for (Node u = 0; u < n; ++u)
    for (int i = 0; i < q; ++i) groups_.push_back({u});
  canonicalize();
}

Configuration::Configuration(int n, int q, std::vector<std::vector<Node>> groups)
    : n_(n), q_(q), groups_(std::move(groups)) {
  require(n >= 1 && q >= 1, "configuration needs n >= 1 and q >= 1");
  std::vector<int> count(n, 0);
  for (auto& grp : groups_) {
    std::sort(grp.begin(), grp.end());
    require(!grp.empty(), "empty group in configuration");
    require(std::adjacent_find(grp.begin(), grp.end()) == grp.end(), "node repeated inside a group");
    for (Node u : grp) {
      require(u >= 0 && u < n, "node out of range in configuration");
      ++count[u];
    }
  }
  for (Node u = 0; u < n; ++u) require(count[u] == q, "every node must belong to exactly q groups");
  canonicalize();
}

Configuration Configuration::from_partition(const Partition& p) { return Configuration(p.n(), 1, p.groups()); }

void Configuration::canonicalize() {
  std::sort(groups_.begin(), groups_.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  member_.assign(n_, {});
  for (int g = 0; g < static_cast<int>(groups_.size()); ++g)
    for (Node u : groups_[g]) member_[u].push_back(g);
}

int Configuration::shared(Node u, Node v) const {
  int s = 0;
  for (int g : member_[u])
    if (contains(g, v)) ++s;
  return s;
}

bool Configuration::contains(int group, Node u) const {
  const auto& grp = groups_[group];
  return std::binary_search(grp.begin(), grp.end(), u);
}

std::string Configuration::key() const {
  std::string s;
  for (const auto& grp : groups_) {
    for (Node u : grp) {
      s.push_back(static_cast<char>(u & 0xff));
      s.push_back(static_cast<char>((u >> 8) & 0xff));
    }
    s.push_back('\xff');
    s.push_back('\xff');
  }
  return s;
}

std::string Configuration::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    if (g) os << ", ";
    os << "{";
    for (std::size_t i = 0; i < groups_[g].size(); ++i) os << (i ? "," : "") << groups_[g][i];
    os << "}";
  }
  os << "]";
  return os.str();
}

ExtRational config_utility(const Game& g, const HFunction& h, const Configuration& c, Node u) {
  std::vector<int> shared(g.n(), 0);
  for (int grp : c.memberships(u))
    for (Node v : c.groups()[grp])
      if (v != u) ++shared[v];
  ExtRational total(0);
  for (Node v = 0; v < g.n(); ++v) {
    if (!shared[v]) continue;
    total += h.eval(shared[v], g.w(u, v));
    if (total.is_neg_inf()) break;
  }
  return total;
}

ExtRational config_global_utility(const Game& g, const HFunction& h, const Configuration& c) {
  ExtRational total(0);
  for (Node u = 0; u < g.n(); ++u) total += config_utility(g, h, c, u);
  return total;
}

std::string ConfigDeviation::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    os << (i ? "," : "") << coalition[i];
    if (drop[i] >= 0) os << ":" << drop[i];
  }
  os << "} -> ";
  if (target == kNewGroup)
    os << "new";
  else
    os << target;
  return os.str();
}

Configuration apply_config_moves(const Configuration& c, const ConfigDeviation& d) {
  auto groups = c.groups();
  int target = d.target;
  if (target == kNewGroup) {
    target = static_cast<int>(groups.size());
    groups.emplace_back();
  }
  for (std::size_t i = 0; i < d.coalition.size(); ++i) {
    if (d.drop[i] < 0) continue;
    Node u = d.coalition[i];
    auto& from = groups[d.drop[i]];
    from.erase(std::find(from.begin(), from.end(), u));
    groups[target].push_back(u);
  }
  std::erase_if(groups, [](const auto& grp) { return grp.empty(); });
  return Configuration(c.n(), c.q(), std::move(groups));
}

void for_each_config_deviation(const Game& g, const HFunction& h, const Configuration& c, int k,
                               const std::function<bool(const ConfigDeviation&)>& visit) {
  require(k >= 1, "k must be at least 1");
  int n = g.n();
  std::vector<ExtRational> now(n);
  for (Node u = 0; u < n; ++u) now[u] = config_utility(g, h, c, u);
  int ng = static_cast<int>(c.groups().size());
  for_each_coalition(n, k, [&](const std::vector<Node>& S) {
    for (int t = 0; t <= ng; ++t) {
      int target = t == ng ? kNewGroup : t;
      ConfigDeviation d;
      d.coalition = S;
      d.target = target;
      d.drop.assign(S.size(), -1);
      std::vector<std::vector<int>> choices(S.size());
      bool moves = false;
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (target != kNewGroup && c.contains(target, S[i])) continue;
        choices[i] = c.memberships(S[i]);
        moves = true;
      }
      if (!moves) continue;
      // Odometer over drop choices.
      std::vector<std::size_t> pick(S.size(), 0);
      for (;;) {
        for (std::size_t i = 0; i < S.size(); ++i) d.drop[i] = choices[i].empty() ? -1 : choices[i][pick[i]];
        Configuration next = apply_config_moves(c, d);
        bool ok = true;
        for (Node u : S)
          if (!(config_utility(g, h, next, u) > now[u])) {
            ok = false;
            break;
          }
        if (ok && !visit(d)) return false;
        std::size_t i = 0;
        for (; i < S.size(); ++i) {
          if (choices[i].empty()) continue;
          if (++pick[i] < choices[i].size()) break;
          pick[i] = 0;
        }
        if (i == S.size()) break;
      }
    }
    return true;
  });
}

std::optional<ConfigDeviation> first_config_deviation(const Game& g, const HFunction& h, const Configuration& c,
                                                      int k) {
  std::optional<ConfigDeviation> out;
  for_each_config_deviation(g, h, c, k, [&](const ConfigDeviation& d) {
    out = d;
    return false;
  });
  return out;
}

bool is_k_stable_config(const Game& g, const HFunction& h, const Configuration& c, int k) {
  return !first_config_deviation(g, h, c, k);
}

ConfigTrace run_multichannel_dynamics(const Game& g, const HFunction& h, int q, const Scheduler& sched,
                                      const MultiOptions& opts) {
  require(!g.directed(), "multichannel dynamics needs a symmetric game");
  require(q >= 1, "q must be at least 1");
  std::mt19937_64 rng(sched.seed);
  ConfigTrace tr;
  tr.initial = opts.initial ? *opts.initial : Configuration(g.n(), q);
  require(tr.initial.n() == g.n() && tr.initial.q() == q, "initial configuration does not match");
  Configuration cur = tr.initial;
  ExtRational f = config_global_utility(g, h, cur);
  std::unordered_set<std::string> seen;
  tr.status = Status::StepCapReached;
  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    std::optional<ConfigDeviation> pick;
    switch (sched.policy) {
      case Policy::FirstLex: pick = first_config_deviation(g, h, cur, opts.k); break;
      case Policy::MinCoalition:
        for (int s = 1; s <= opts.k && !pick; ++s)
          for_each_config_deviation(g, h, cur, s, [&](const ConfigDeviation& d) {
            if (static_cast<int>(d.coalition.size()) < s) return true;
            pick = d;
            return false;
          });
        break;
      default: {
        std::vector<ConfigDeviation> all;
        for_each_config_deviation(g, h, cur, opts.k, [&](const ConfigDeviation& d) {
          all.push_back(d);
          return true;
        });
        if (all.empty()) break;
        if (sched.policy == Policy::Random) {
          pick = all[rng() % all.size()];
          break;
        }
        Rational best_gain;
        for (auto& d : all) {
          Configuration next = apply_config_moves(cur, d);
          Rational gain = 0;
          for (Node u : d.coalition) {
            auto b = config_utility(g, h, cur, u), a = config_utility(g, h, next, u);
            gain += b.is_neg_inf() ? Rational(kHugeGain) : a.value() - b.value();
          }
          if (!pick || gain > best_gain) {
            pick = d;
            best_gain = gain;
          }
        }
      }
    }
    if (!pick) {
      tr.status = Status::Stable;
      break;
    }
    Configuration next = apply_config_moves(cur, *pick);
    ExtRational fn = config_global_utility(g, h, next);
    if (opts.k == 1 && !f.is_neg_inf() && !(fn > f))
      throw std::logic_error("global utility did not increase at step " + std::to_string(step));
    if (opts.record_steps) {
      ConfigStep s;
      s.deviation = *pick;
      for (Node u : pick->coalition) {
        s.util_before.push_back(config_utility(g, h, cur, u));
        s.util_after.push_back(config_utility(g, h, next, u));
      }
      s.f_before = f;
      s.f_after = fn;
      tr.steps.push_back(std::move(s));
    }
    ++tr.num_steps;
    cur = std::move(next);
    f = fn;
    if (opts.k > 1 && !seen.insert(cur.key()).second) {
      tr.status = Status::CycleDetected;
      break;
    }
  }
  if (tr.status == Status::StepCapReached && !first_config_deviation(g, h, cur, opts.k)) tr.status = Status::Stable;
  tr.final = cur;
  return tr;
}

void for_each_configuration(const Game& g, int q, const std::function<bool(const Configuration&)>& visit,
                            const SearchOptions& opts) {
  int n = g.n();
  require(n <= 64, "configuration search supports at most 64 nodes");
  require(q >= 1, "q must be at least 1");
  std::vector<std::uint64_t> hostile(n, 0);
  for (Node u = 0; u < n; ++u)
    for (Node v = 0; v < n; ++v)
      if (u != v && g.enemies(u, v)) hostile[u] |= std::uint64_t{1} << v;
  std::vector<std::uint64_t> mask;
  std::vector<std::vector<Node>> blocks;
  std::uint64_t visited = 0;
  bool stop = false;

  std::function<void(Node)> rec = [&](Node u) {
    if (stop) return;
    if (u == n) {
      if (++visited > opts.budget) throw SearchTooLarge("configuration budget exceeded");
      if (!visit(Configuration(n, q, blocks))) stop = true;
      return;
    }
    std::vector<int> ok;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
      if (!(mask[b] & hostile[u])) ok.push_back(b);
    // Choose `take` existing blocks (ascending) and q - take new ones.
    for (int take = std::min<int>(q, static_cast<int>(ok.size())); take >= 0 && !stop; --take) {
      std::vector<int> idx(take);
      std::iota(idx.begin(), idx.end(), 0);
      for (;;) {
        std::size_t base = blocks.size();
        for (int i : idx) {
          mask[ok[i]] |= std::uint64_t{1} << u;
          blocks[ok[i]].push_back(u);
        }
        for (int i = take; i < q; ++i) {
          mask.push_back(std::uint64_t{1} << u);
          blocks.push_back({u});
        }
        rec(u + 1);
        blocks.resize(base);
        mask.resize(base);
        for (int i : idx) {
          mask[ok[i]] &= ~(std::uint64_t{1} << u);
          blocks[ok[i]].pop_back();
        }
        if (stop) return;
        int j = take - 1;
        while (j >= 0 && idx[j] == static_cast<int>(ok.size()) - take + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l < take; ++l) idx[l] = idx[l - 1] + 1;
      }
    }
  };
  rec(0);
}

std::optional<Configuration> exists_k_stable_config(const Game& g, const HFunction& h, int q, int k,
                                                    const SearchOptions& opts) {
  std::optional<Configuration> found;
  for_each_configuration(
      g, q,
      [&](const Configuration& c) {
        if (!is_k_stable_config(g, h, c, k)) return true;
        found = c;
        return false;
      },
      opts);
  return found;
}

int min_channels(const Game& g, const HFunction& h, const Rational& U, int max_q, const SearchOptions& opts) {
  if (max_q < 0) max_q = g.n();
  for (int q = 1; q <= max_q; ++q) {
    bool hit = false;
    for_each_configuration(
        g, q,
        [&](const Configuration& c) {
          auto f = config_global_utility(g, h, c);
          if (f.is_neg_inf() || f.value() < U) return true;
          hit = true;
          return false;
        },
        opts);
    if (hit) return q;
  }
  throw NotAchievable("global utility " + rational_str(U) + " is not reachable with at most " +
                      std::to_string(max_q) + " channels");
}

// ---------------------------------------------------------------- transform

Configuration TransformLayout::to_configuration(const Partition& p) const {
  std::vector<std::vector<Node>> groups;
  for (const auto& grp : p.groups()) {
    std::vector<Node> base;
    for (Node x : grp)
      if (x < base_n * q) base.push_back(x / q);
    if (!base.empty()) groups.push_back(std::move(base));
  }
  return Configuration(base_n, q, std::move(groups));
}

TransformLayout multichannel_transform(const Game& g, int q, const HFunction& h) {
  require(!g.directed(), "transform needs a symmetric game");
  require(q >= 1, "q must be at least 1");
  int n = g.n();
  std::vector<std::int64_t> ws;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) {
      std::int64_t w = g.w(u, v);
      require(w == kNegInf || w >= 0, "transform needs weights in {-inf} and the naturals");
      if (w > 0) ws.push_back(w);
    }
  require(is_concave(h, q, ws), "transform needs a concave sharing function");

  // Marginal value of the g-th shared group, and the common scale.
  auto marginal = [&](int gg, std::int64_t w) { return h(gg, w) - h(gg - 1, w); };
  boost::multiprecision::cpp_int den = 1;
  for (auto w : ws)
    for (int gg = 1; gg <= q; ++gg) den = boost::multiprecision::lcm(den, denominator(marginal(gg, w)));
  TransformLayout out;
  out.base_n = n;
  out.q = q;
  out.scale = Rational(4 * den);
  auto as_int = [](const Rational& r) {
    if (denominator(r) != 1) throw std::logic_error("gadget weight is not integral");
    return numerator(r).convert_to<std::int64_t>();
  };

  std::vector<std::pair<Node, Node>> pos;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (g.w(u, v) > 0) pos.push_back({u, v});
  int total = n * q + static_cast<int>(pos.size()) * q * 2;
  Game G(total);
  std::set<Weight> declared{Weight::neg_inf(), Weight::finite(0)};
  auto put = [&](Node a, Node b, Weight w) {
    G.set(a, b, w);
    declared.insert(w);
  };
  for (Node u = 0; u < n; ++u)
    for (int i = 0; i < q; ++i)
      for (int j = i + 1; j < q; ++j) put(out.copy(u, i), out.copy(u, j), Weight::neg_inf());
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (g.w(u, v) == kNegInf)
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j) put(out.copy(u, i), out.copy(v, j), Weight::neg_inf());
  // Gadget node ids follow the copies, pair by pair, first then second node.
  Node next = n * q;
  for (auto [u, v] : pos) {
    std::int64_t w = g.w(u, v);
    std::vector<Node> firsts;
    for (int gg = 1; gg <= q; ++gg) {
      Node a = next++, b = next++;
      Rational d = marginal(gg, w);
      for (int i = 0; i < q; ++i) {
        put(out.copy(u, i), a, Weight::finite(as_int(out.scale * d / 2)));
        put(out.copy(v, i), a, Weight::finite(as_int(out.scale * d / 2)));
      }
      put(a, b, Weight::finite(as_int(3 * out.scale * d / 4)));
      for (Node y = 0; y < total; ++y)
        if (y != a && y != b) put(b, y, Weight::neg_inf());
      for (Node f : firsts) put(a, f, Weight::neg_inf());
      firsts.push_back(a);
      out.offset += 3 * out.scale * d / 2;
    }
  }
  G.declare_weight_set({declared.begin(), declared.end()});
  out.game = std::move(G);
  return out;
}

// ---------------------------------------------------------------- hypergraphs

void HyperGame::add(std::vector<Node> nodes, Weight w) {
  std::sort(nodes.begin(), nodes.end());
  require(nodes.size() >= 2, "hyperedge needs at least two nodes");
  require(std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end(), "hyperedge repeats a node");
  require(nodes.front() >= 0 && nodes.back() < n_, "hyperedge node out of range");
  require(t_ == 0 || static_cast<int>(nodes.size()) <= t_, "hyperedge exceeds the arity bound");
  require(!w.is_best_friend(), "hyperedge weight must be finite or -inf");
  edges_[nodes] = w;
}

HyperGame HyperGame::from_game(const Game& g) {
  require(!g.directed(), "hypergraph view needs a symmetric game");
  HyperGame H(g.n(), 2);
  for (Node u = 0; u < g.n(); ++u)
    for (Node v = u + 1; v < g.n(); ++v) {
      std::int64_t w = g.w(u, v);
      if (w == kNegInf)
        H.add({u, v}, Weight::neg_inf());
      else if (w != 0)
        H.add({u, v}, Weight::finite(w));
    }
  return H;
}

namespace {

ExtInt as_ext(const Weight& w) { return w.is_neg_inf() ? ExtInt::neg_inf() : ExtInt(w.value); }

bool inside(const std::vector<Node>& e, const Partition& p, int grp) {
  for (Node x : e)
    if (p.group_of(x) != grp) return false;
  return true;
}

}  // namespace

ExtInt hyper_utility(const HyperGame& H, const Partition& p, Node u) {
  ExtInt total(0);
  int grp = p.group_of(u);
  for (const auto& [e, w] : H.edges())
    if (std::binary_search(e.begin(), e.end(), u) && inside(e, p, grp)) total += as_ext(w);
  return total;
}

ExtInt hyper_potential(const HyperGame& H, const Partition& p) {
  ExtInt total(0);
  for (const auto& [e, w] : H.edges())
    if (inside(e, p, p.group_of(e.front()))) total += as_ext(w);
  return total;
}

namespace {

Partition move_coalition(const Partition& p, const std::vector<Node>& S, int target) {
  std::vector<int> labels = p.labels();
  int lab = target == kNewGroup ? static_cast<int>(p.num_groups()) : target;
  for (Node u : S) labels[u] = lab;
  return Partition::from_labels(labels);
}

void for_each_hyper_deviation(const HyperGame& H, const Partition& p, int k, int min_size,
                              const std::function<bool(const Deviation&)>& visit) {
  int n = H.n();
  std::vector<ExtInt> now(n);
  for (Node u = 0; u < n; ++u) now[u] = hyper_utility(H, p, u);
  int ng = static_cast<int>(p.num_groups());
  for_each_coalition(n, k, [&](const std::vector<Node>& S) {
    if (static_cast<int>(S.size()) < min_size) return true;
    for (int t = 0; t <= ng; ++t) {
      int target = t == ng ? kNewGroup : t;
      bool moves = false;
      for (Node u : S)
        if (target == kNewGroup || p.group_of(u) != target) moves = true;
      if (!moves) continue;
      // A lone member of its group moving to a new group changes nothing.
      if (target == kNewGroup && S.size() == 1 && p.group(p.group_of(S[0])).size() == 1) continue;
      Partition next = move_coalition(p, S, target);
      bool ok = true;
      for (Node u : S)
        if (!(hyper_utility(H, next, u) > now[u])) {
          ok = false;
          break;
        }
      if (ok && !visit({S, target})) return false;
    }
    return true;
  });
}

}  // namespace

bool is_k_stable_hyper(const HyperGame& H, const Partition& p, int k) {
  bool found = false;
  for_each_hyper_deviation(H, p, k, 1, [&](const Deviation&) {
    found = true;
    return false;
  });
  return !found;
}

HyperTrace run_hyper_dynamics(const HyperGame& H, const Scheduler& sched, const HyperOptions& opts) {
  require(opts.k >= 1, "k must be at least 1");
  std::mt19937_64 rng(sched.seed);
  HyperTrace tr;
  tr.initial = Partition(H.n());
  Partition cur = tr.initial;
  ExtInt phi = hyper_potential(H, cur);
  std::unordered_set<std::string> seen{cur.key()};
  tr.status = Status::StepCapReached;
  for (std::size_t step = 0; step < opts.max_steps; ++step) {
    std::optional<Deviation> pick;
    auto first = [&](int kk, int min_size) {
      for_each_hyper_deviation(H, cur, kk, min_size, [&](const Deviation& d) {
        pick = d;
        return false;
      });
    };
    if (sched.policy == Policy::FirstLex) {
      first(opts.k, 1);
    } else if (sched.policy == Policy::MinCoalition) {
      for (int s = 1; s <= opts.k && !pick; ++s) first(s, s);
    } else {
      std::vector<Deviation> all;
      for_each_hyper_deviation(H, cur, opts.k, 1, [&](const Deviation& d) {
        all.push_back(d);
        return true;
      });
      if (!all.empty()) {
        if (sched.policy == Policy::Random) {
          pick = all[rng() % all.size()];
        } else {
          std::int64_t best = 0;
          for (auto& d : all) {
            Partition next = move_coalition(cur, d.coalition, d.target);
            std::int64_t gain = 0;
            for (Node u : d.coalition) {
              ExtInt b = hyper_utility(H, cur, u), a = hyper_utility(H, next, u);
              gain += b.is_neg_inf() ? kHugeGain : (a - b).value();
            }
            if (!pick || gain > best) {
              pick = d;
              best = gain;
            }
          }
        }
      }
    }
    if (!pick) {
      tr.status = Status::Stable;
      break;
    }
    Partition next = move_coalition(cur, pick->coalition, pick->target);
    ExtInt phn = hyper_potential(H, next);
    HyperStep s;
    s.deviation = *pick;
    s.phi_before = phi;
    s.phi_after = phn;
    for (Node u : pick->coalition) {
      s.util_before.push_back(hyper_utility(H, cur, u));
      s.util_after.push_back(hyper_utility(H, next, u));
    }
    if (opts.k == 1 && phi.finite() && s.util_before[0].finite()) {
      if (!(phn > phi) || phn - phi != s.util_after[0] - s.util_before[0])
        throw std::logic_error("potential change differs from the mover's gain at step " + std::to_string(step));
    }
    if (opts.record_steps) tr.steps.push_back(std::move(s));
    ++tr.num_steps;
    cur = std::move(next);
    phi = phn;
    if (!seen.insert(cur.key()).second) {
      tr.status = Status::CycleDetected;
      break;
    }
  }
  if (tr.status == Status::StepCapReached && is_k_stable_hyper(H, cur, opts.k)) tr.status = Status::Stable;
  tr.final = cur;
  return tr;
}

std::optional<int> berge_girth(const HyperGame& H) {
  // Berge cycles of length p are cycles of length 2p in the incidence graph.
  std::vector<std::vector<Node>> adj(H.n());
  for (const auto& [e, w] : H.edges()) {
    if (w.is_neg_inf() || w.value <= 0) continue;
    Node id = static_cast<Node>(adj.size());
    adj.emplace_back();
    for (Node x : e) {
      adj[id].push_back(x);
      adj[x].push_back(id);
    }
  }
  auto g = girth(adj);
  if (!g) return std::nullopt;
  return *g / 2;
}

int hyper_components(const HyperGame& H) {
  std::vector<int> parent(H.n());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int comps = H.n();
  for (const auto& [e, w] : H.edges()) {
    if (w.is_neg_inf() || w.value <= 0) continue;
    for (std::size_t i = 1; i < e.size(); ++i) {
      int a = find(e[0]), b = find(e[i]);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
  }
  return comps;
}

bool acyclic_count_check(const HyperGame& H) {
  require(!berge_girth(H), "hypergraph has a Berge cycle");
  long long sum = 0;
  for (const auto& [e, w] : H.edges())
    if (!w.is_neg_inf() && w.value > 0) sum += static_cast<long long>(e.size()) - 1;
  return H.n() == sum + hyper_components(H);
}

}  // namespace ccg
