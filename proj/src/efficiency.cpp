#include "ccg/efficiency.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace ccg {

ValuedPartition max_partition(const Game& g, const SearchOptions& opts) {
  int n = g.n();
  require(n <= 64, "maximum partition search supports at most 64 nodes");
  // pair[r][j]: both directions summed; pos: the positive part, used for bounds.
  std::vector<std::vector<std::int64_t>> pair(n, std::vector<std::int64_t>(n, 0)), pos = pair;
  std::vector<std::uint64_t> hostile(n, 0);
  for (Node u = 0; u < n; ++u)
    for (Node v = 0; v < n; ++v) {
      if (u == v) continue;
      if (g.enemies(u, v)) {
        hostile[u] |= std::uint64_t{1} << v;
        continue;
      }
      pair[u][v] = g.w(u, v) + g.w(v, u);
      pos[u][v] = std::max<std::int64_t>(0, pair[u][v]);
    }
  // Greedy cover of the hostility graph by cliques: a node shares a group with
  // at most one member of each class, which tightens the bound.
  std::vector<int> cls(n);
  std::vector<std::uint64_t> cls_mask;
  for (Node j = 0; j < n; ++j) {
    std::size_t c = 0;
    while (c < cls_mask.size() && (cls_mask[c] & ~hostile[j]) != 0) ++c;
    if (c == cls_mask.size()) cls_mask.push_back(0);
    cls_mask[c] |= std::uint64_t{1} << j;
    cls[j] = static_cast<int>(c);
  }
  std::vector<std::int64_t> cls_best(cls_mask.size(), 0);
  // partner[r] = j < r when j is the only node r may share a group with. Then
  // r scores only in the group {j, r}, where j scores nothing.
  std::vector<int> partner(n, -1);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (Node r = 0; r < n; ++r) {
    std::uint64_t ok = all & ~hostile[r] & ~(std::uint64_t{1} << r);
    if (ok && !(ok & (ok - 1))) {
      int j = std::countr_zero(ok);
      if (j < r) partner[r] = j;
    }
  }
  std::vector<std::int64_t> node_bound(n, 0);

  std::int64_t best = -1;
  if (!g.directed()) {
    RunOptions ro;
    ro.record_steps = false;
    ExtInt f = global_utility(g, run_dynamics(g, 1, Scheduler::first_lex(), ro).final);
    if (f.finite()) best = std::max<std::int64_t>(best, f.value() - 1);
  }
  std::vector<int> best_labels, labels(n, -1);
  std::vector<std::uint64_t> mask;
  std::vector<std::vector<std::int64_t>> gsum;  // gsum[grp][r] = sum of pos[r][j], j in grp
  std::uint64_t visited = 0;
  std::int64_t value = 0;

  std::function<void(Node)> rec = [&](Node i) {
    if (++visited > opts.budget) throw SearchTooLarge("maximum partition budget exceeded");
    if (i == n) {
      if (value > best) {
        best = value;
        best_labels = labels;
      }
      return;
    }
    std::int64_t bound = value;
    for (Node r = i; r < n; ++r) {
      std::int64_t m = 0;
      for (std::size_t b = 0; b < mask.size(); ++b)
        if (!(mask[b] & hostile[r])) m = std::max(m, gsum[b][r]);
      if (partner[r] >= i) {
        m = std::max<std::int64_t>(0, pos[r][partner[r]] - node_bound[partner[r]]);
      } else {
        // unassigned earlier nodes, one per class
        for (Node j = i; j < r; ++j) cls_best[cls[j]] = std::max(cls_best[cls[j]], pos[r][j]);
        for (Node j = i; j < r; ++j) {
          m += cls_best[cls[j]];
          cls_best[cls[j]] = 0;
        }
      }
      node_bound[r] = m;
      bound += m;
    }
    if (bound <= best) return;
    auto place = [&](std::size_t b) {
      std::int64_t gain = 0;
      for (Node j = 0; j < i; ++j)
        if (labels[j] == static_cast<int>(b)) gain += pair[i][j];
      labels[i] = static_cast<int>(b);
      mask[b] |= std::uint64_t{1} << i;
      for (Node r = i + 1; r < n; ++r) gsum[b][r] += pos[r][i];
      value += gain;
      rec(i + 1);
      value -= gain;
      for (Node r = i + 1; r < n; ++r) gsum[b][r] -= pos[r][i];
      mask[b] &= ~(std::uint64_t{1} << i);
      labels[i] = -1;
    };
    for (std::size_t b = 0; b < mask.size(); ++b)
      if (!(mask[b] & hostile[i])) place(b);
    mask.push_back(0);
    gsum.emplace_back(n, 0);
    place(mask.size() - 1);
    mask.pop_back();
    gsum.pop_back();
  };
  rec(0);
  if (best_labels.empty()) throw std::logic_error("maximum partition search found nothing");
  Partition p = Partition::from_labels(best_labels);
  return {p, global_utility(g, p)};
}

std::optional<ValuedPartition> worst_k_stable(const Game& g, int k, const SearchOptions& opts) {
  std::optional<ValuedPartition> worst;
  for_each_feasible_partition(
      g,
      [&](const std::vector<int>& labels) {
        Partition p = Partition::from_labels(labels);
        if (!is_k_stable(g, p, k)) return true;
        ExtInt f = global_utility(g, p);
        if (!worst || f < worst->value) worst = ValuedPartition{p, f};
        return true;
      },
      opts);
  return worst;
}

std::string PriceOfAnarchy::str() const {
  switch (kind) {
    case Kind::Infinite: return "infinite";
    case Kind::Undefined: return "undefined";
    default: return rational_str(ratio) + (zero_over_zero ? " (0/0)" : "");
  }
}

namespace {

PriceOfAnarchy ratio_of(ExtInt best, ExtInt worst) {
  PriceOfAnarchy r;
  r.best = best;
  r.worst = worst;
  if (worst.is_neg_inf() || best.is_neg_inf()) throw std::logic_error("ratio of -inf utilities");
  if (worst.value() == 0) {
    if (best.value() == 0) {
      r.kind = PriceOfAnarchy::Kind::Finite;
      r.ratio = 1;
      r.zero_over_zero = true;
    } else {
      r.kind = PriceOfAnarchy::Kind::Infinite;
    }
    return r;
  }
  r.kind = PriceOfAnarchy::Kind::Finite;
  r.ratio = Rational(best.value(), worst.value());
  return r;
}

}  // namespace

PriceOfAnarchy price_of_anarchy(const Game& g, int k, const SearchOptions& opts) {
  auto worst = worst_k_stable(g, k, opts);
  auto best = max_partition(g, opts);
  if (!worst) {
    PriceOfAnarchy r;
    r.best = best.value;
    r.best_partition = best.partition;
    return r;
  }
  auto r = ratio_of(best.value, worst->value);
  r.best_partition = best.partition;
  r.worst_partition = worst->partition;
  return r;
}

PriceOfAnarchy witness_ratio(const Game& g, const Partition& best, const Partition& worst) {
  auto r = ratio_of(global_utility(g, best), global_utility(g, worst));
  r.best_partition = best;
  r.worst_partition = worst;
  return r;
}

namespace {

DeltaBoundReport delta_basics(const Game& g) {
  require(!g.directed(), "delta bound check needs a symmetric game");
  DeltaBoundReport rep;
  auto adj = friendship_graph(g);
  for (Node u = 0; u < g.n(); ++u) {
    rep.delta_plus = std::max(rep.delta_plus, static_cast<int>(adj[u].size()));
    rep.m_plus += static_cast<long long>(adj[u].size());
  }
  rep.m_plus /= 2;
  rep.w_p = g.max_positive();
  rep.max_upper = 2 * rep.m_plus * rep.w_p;
  rep.bound = Rational(2 * rep.delta_plus * rep.w_p);
  return rep;
}

void check_one(const Game& g, const Partition& p, DeltaBoundReport& rep) {
  auto util = utilities(g, p);
  long long positive = 0;
  for (const auto& x : util)
    if (x > ExtInt(0)) ++positive;
  for (Node u = 0; u < g.n(); ++u)
    for (Node v = u + 1; v < g.n(); ++v)
      if (g.w(u, v) > 0 && !(util[u] > ExtInt(0)) && !(util[v] > ExtInt(0))) rep.key_step = false;
  if (positive * rep.delta_plus < rep.m_plus) rep.count_ok = false;
  ++rep.partitions;
}

void finish(DeltaBoundReport& rep) {
  if (!rep.poa) return;
  const auto& r = *rep.poa;
  if (r.best.finite() && r.best.value() > rep.max_upper) rep.upper_ok = false;
  if (r.kind == PriceOfAnarchy::Kind::Infinite) rep.ratio_ok = false;
  if (r.kind == PriceOfAnarchy::Kind::Finite && !r.zero_over_zero && r.ratio > rep.bound) rep.ratio_ok = false;
}

}  // namespace

DeltaBoundReport check_delta_bound(const Game& g, int k, const SearchOptions& opts) {
  require(k >= 2, "the positive-endpoint argument needs k >= 2");
  DeltaBoundReport rep = delta_basics(g);
  for_each_feasible_partition(
      g,
      [&](const std::vector<int>& labels) {
        Partition p = Partition::from_labels(labels);
        if (is_k_stable(g, p, k)) check_one(g, p, rep);
        return true;
      },
      opts);
  rep.poa = price_of_anarchy(g, k, opts);
  finish(rep);
  return rep;
}

DeltaBoundReport check_delta_bound_on(const Game& g, const std::vector<Partition>& stable,
                                      const std::optional<Partition>& best) {
  DeltaBoundReport rep = delta_basics(g);
  std::optional<Partition> worst;
  for (const auto& p : stable) {
    check_one(g, p, rep);
    if (!worst || global_utility(g, p) < global_utility(g, *worst)) worst = p;
  }
  if (best && worst) rep.poa = witness_ratio(g, *best, *worst);
  finish(rep);
  return rep;
}

ValuedConfiguration max_configuration(const Game& g, const HFunction& h, int q, const SearchOptions& opts) {
  std::optional<ValuedConfiguration> best;
  for_each_configuration(
      g, q,
      [&](const Configuration& c) {
        auto f = config_global_utility(g, h, c);
        if (!best || f > best->value) best = ValuedConfiguration{c, f};
        return true;
      },
      opts);
  return *best;
}

std::optional<ValuedConfiguration> worst_k_stable_config(const Game& g, const HFunction& h, int q, int k,
                                                         const SearchOptions& opts) {
  std::optional<ValuedConfiguration> worst;
  for_each_configuration(
      g, q,
      [&](const Configuration& c) {
        if (!is_k_stable_config(g, h, c, k)) return true;
        auto f = config_global_utility(g, h, c);
        if (!worst || f < worst->value) worst = ValuedConfiguration{c, f};
        return true;
      },
      opts);
  return worst;
}

std::string ConfigPriceOfAnarchy::str() const {
  switch (kind) {
    case PriceOfAnarchy::Kind::Infinite: return "infinite";
    case PriceOfAnarchy::Kind::Undefined: return "undefined";
    default: return rational_str(ratio) + (zero_over_zero ? " (0/0)" : "");
  }
}

ConfigPriceOfAnarchy price_of_anarchy_config(const Game& g, const HFunction& h, int q, int k,
                                             const SearchOptions& opts) {
  ConfigPriceOfAnarchy r;
  r.best = max_configuration(g, h, q, opts);
  r.worst = worst_k_stable_config(g, h, q, k, opts);
  if (!r.worst) return r;
  const Rational& b = r.best->value.value();
  const Rational& w = r.worst->value.value();
  if (w == 0) {
    r.kind = b == 0 ? PriceOfAnarchy::Kind::Finite : PriceOfAnarchy::Kind::Infinite;
    r.zero_over_zero = b == 0;
    r.ratio = 1;
    return r;
  }
  r.kind = PriceOfAnarchy::Kind::Finite;
  r.ratio = b / w;
  return r;
}

GreedyBoundReport sample_greedy_bounds(const Game& g, const HFunction& h, int q, int runs, std::uint64_t seed,
                                       const SearchOptions& opts) {
  GreedyBoundReport rep;
  rep.best = max_configuration(g, h, q, opts).value;
  const int n = g.n();
  long long m_plus = 0;
  bool positive_only = true;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) {
      if (g.w(u, v) > 0) ++m_plus;
      if (!g.enemies(u, v) && g.w(u, v) <= 0) positive_only = false;
    }
  rep.positive_applies = positive_only && m_plus > 0;
  const Rational hq = h(q, g.max_positive());
  for (int r = 0; r < runs; ++r) {
    MultiOptions mo;
    mo.record_steps = false;
    auto trace = run_multichannel_dynamics(g, h, q, Scheduler::random(seed + static_cast<std::uint64_t>(r)), mo);
    const Configuration& c = trace.final;
    auto f = config_global_utility(g, h, c);
    long long s = static_cast<long long>(trace.num_steps);
    ++rep.runs;
    if (rep.runs == 1 || f < rep.worst) {
      rep.worst = f;
      rep.worst_steps = trace.num_steps;
    }
    int touched = 0;
    for (Node u = 0; u < n; ++u) {
      bool any = false;
      for (int grp : c.memberships(u)) any |= c.groups()[grp].size() > 1;
      touched += any;
    }
    if (touched > 2 * s) rep.touched_ok = false;
    if (2 * s * n < m_plus) rep.count_ok = false;
    if (s == 0) continue;
    const Rational& fs = f.value();
    const Rational& fb = rep.best.value();
    if (fb * s > 2 * hq * m_plus * fs) rep.general_ok = false;
    if (rep.positive_applies && fb * q > 2 * hq * (q + 2 * n) * fs) rep.positive_ok = false;
  }
  return rep;
}

}  // namespace ccg
