#include "ccg/dynamics.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace ccg {

std::string Deviation::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < coalition.size(); ++i) os << (i ? "," : "") << coalition[i];
  os << "}->";
  if (target == kNewGroup)
    os << "new";
  else
    os << target;
  return os.str();
}

GroupSums::GroupSums(const Game& g, const Partition& p)
    : p_(&p), groups_(p.num_groups()), sum_(static_cast<std::size_t>(g.n()) * groups_, 0),
      enemy_(sum_.size(), 0) {
  for (Node u = 0; u < g.n(); ++u) {
    const std::int64_t* r = g.row(u);
    for (Node v = 0; v < g.n(); ++v) {
      if (u == v) continue;
      auto i = idx(u, p.group_of(v));
      if (r[v] == kNegInf)
        ++enemy_[i];
      else
        sum_[i] += r[v];
    }
  }
}

namespace {

// Sum of the r largest positive weights in u's row, for r = 0..k.
std::vector<std::vector<std::int64_t>> optimistic_table(const Game& g, int k) {
  std::vector<std::vector<std::int64_t>> t(g.n());
  for (Node u = 0; u < g.n(); ++u) {
    std::vector<std::int64_t> pos;
    for (Node v = 0; v < g.n(); ++v)
      if (v != u && g.w(u, v) > 0) pos.push_back(g.w(u, v));
    std::sort(pos.rbegin(), pos.rend());
    t[u].assign(k + 1, 0);
    for (int r = 1; r <= k; ++r) t[u][r] = t[u][r - 1] + (r - 1 < static_cast<int>(pos.size()) ? pos[r - 1] : 0);
  }
  return t;
}

class DeviationSearch {
 public:
  DeviationSearch(const Game& g, const Partition& p, int k, int min_size,
                  const std::function<bool(const Deviation&)>& visit)
      : g_(g), p_(p), sums_(g, p), k_(k), min_size_(min_size), visit_(visit),
        targets_(static_cast<int>(p.num_groups()) + 1), opt_(optimistic_table(g, k)) {
    cur_.resize(g.n());
    for (Node u = 0; u < g.n(); ++u) cur_[u] = sums_.current(u);
  }

  void run() {
    extend(0, std::vector<char>(targets_, 1));
  }

 private:
  bool in_target(Node u, int t) const { return t + 1 < targets_ && p_.group_of(u) == t; }

  // Best utility member u could still reach in target t given the current
  // coalition and `room` further members. nullopt if the target is dead for u.
  std::optional<std::int64_t> partial(Node u, int t) const {
    std::int64_t s = 0;
    if (t + 1 < targets_) {
      if (sums_.enemies(u, t)) return std::nullopt;
      s = sums_.sum(u, t);
    }
    const std::int64_t* r = g_.row(u);
    for (Node x : coal_) {
      if (x == u || in_target(x, t)) continue;
      if (r[x] == kNegInf) return std::nullopt;
      s += r[x];
    }
    return s;
  }

  // Returns false if the visitor asked to stop.
  bool extend(Node start, const std::vector<char>& alive_parent) {
    for (Node x = start; x < g_.n(); ++x) {
      bool pair_ok = true;
      for (Node y : coal_)
        if (g_.enemies(x, y)) {
          pair_ok = false;
          break;
        }
      if (!pair_ok) continue;
      coal_.push_back(x);
      int room = k_ - static_cast<int>(coal_.size());
      std::vector<char> alive(targets_, 0);
      bool any_alive = false;
      for (int t = 0; t < targets_; ++t) {
        if (!alive_parent[t]) continue;
        bool ok = true, exact = true;
        bool mover = false;
        for (Node u : coal_) {
          if (!in_target(u, t)) mover = true;
          auto s = partial(u, t);
          if (!s) {
            ok = false;
            break;
          }
          ExtInt now = *s;
          if (!(now > cur_[u])) exact = false;
          if (!(ExtInt(*s + opt_[u][room]) > cur_[u])) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        alive[t] = 1;
        any_alive = true;
        if (exact && mover && static_cast<int>(coal_.size()) >= min_size_) {
          Deviation d{coal_, t + 1 < targets_ ? t : kNewGroup};
          if (!visit_(d)) {
            coal_.pop_back();
            return false;
          }
        }
      }
      if (any_alive && room > 0 && !extend(x + 1, alive)) {
        coal_.pop_back();
        return false;
      }
      coal_.pop_back();
    }
    return true;
  }

  const Game& g_;
  const Partition& p_;
  GroupSums sums_;
  int k_, min_size_;
  const std::function<bool(const Deviation&)>& visit_;
  int targets_;
  std::vector<std::vector<std::int64_t>> opt_;
  std::vector<ExtInt> cur_;
  std::vector<Node> coal_;
};

}  // namespace

void for_each_deviation(const Game& g, const Partition& p, int k, const std::function<bool(const Deviation&)>& visit,
                        int min_size) {
  require(k >= 1, "k must be at least 1");
  require(p.n() == g.n(), "partition and game sizes differ");
  DeviationSearch(g, p, k, min_size, visit).run();
}

std::vector<Deviation> enumerate_deviations(const Game& g, const Partition& p, int k) {
  std::vector<Deviation> out;
  for_each_deviation(g, p, k, [&](const Deviation& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

std::optional<Deviation> first_deviation(const Game& g, const Partition& p, int k) {
  std::optional<Deviation> out;
  for_each_deviation(g, p, k, [&](const Deviation& d) {
    out = d;
    return false;
  });
  return out;
}

std::vector<GossipDeviation> enumerate_gossip(const Game& g, const Partition& p) {
  GroupSums s(g, p);
  std::vector<GossipDeviation> out;
  for (Node u = 0; u < g.n(); ++u)
    for (Node v = u + 1; v < g.n(); ++v) {
      int gu = p.group_of(u), gv = p.group_of(v);
      if (gu == gv) continue;
      // merging cannot lift a node out of -inf
      if (s.current(u).is_neg_inf() || s.current(v).is_neg_inf()) continue;
      if (s.value(u, gv) > ExtInt(0) && s.value(v, gu) > ExtInt(0)) out.push_back({u, v});
    }
  return out;
}

namespace {

Partition moved(const Partition& p, const Deviation& d) {
  require(d.target == kNewGroup || (d.target >= 0 && d.target < static_cast<int>(p.num_groups())),
          "deviation target out of range");
  auto labels = p.labels();
  int t = d.target == kNewGroup ? static_cast<int>(p.num_groups()) : d.target;
  for (Node u : d.coalition) {
    require(u >= 0 && u < p.n(), "coalition node out of range");
    labels[u] = t;
  }
  return Partition::from_labels(labels);
}

}  // namespace

bool MoveEffect::improves() const {
  for (std::size_t i = 0; i < before.size(); ++i)
    if (!(after[i] > before[i])) return false;
  return true;
}

MoveEffect deviation_effect(const Game& g, const Partition& p, const Deviation& d) {
  Partition q = moved(p, d);
  MoveEffect e;
  for (Node u : d.coalition) {
    e.before.push_back(utility(g, p, u));
    e.after.push_back(utility(g, q, u));
  }
  return e;
}

Partition apply_deviation(const Game& g, const Partition& p, const Deviation& d) {
  require(!d.coalition.empty(), "empty coalition");
  bool mover = false;
  for (Node u : d.coalition)
    if (d.target == kNewGroup || p.group_of(u) != d.target) mover = true;
  require(mover, "deviation moves nobody");
  Partition q = moved(p, d);
  for (Node u : d.coalition)
    if (!(utility(g, q, u) > utility(g, p, u)))
      throw PreconditionError("deviation " + d.str() + " does not strictly improve node " + std::to_string(u));
  return q;
}

Partition apply_gossip(const Game& g, const Partition& p, const GossipDeviation& d) {
  int gu = p.group_of(d.u), gv = p.group_of(d.v);
  require(gu != gv, "gossip pair already shares a group");
  auto labels = p.labels();
  for (auto& l : labels)
    if (l == gu) l = gv;
  Partition q = Partition::from_labels(labels);
  for (Node x : {d.u, d.v})
    if (!(utility(g, q, x) > utility(g, p, x))) throw PreconditionError("gossip does not improve both nodes");
  return q;
}

std::optional<Policy> parse_policy(const std::string& s) {
  if (s == "firstlex") return Policy::FirstLex;
  if (s == "random") return Policy::Random;
  if (s == "mincoalition") return Policy::MinCoalition;
  if (s == "maxgain") return Policy::MaxUtilityGain;
  return std::nullopt;
}

std::string policy_name(Policy p) {
  switch (p) {
    case Policy::FirstLex: return "firstlex";
    case Policy::Random: return "random";
    case Policy::MinCoalition: return "mincoalition";
    default: return "maxgain";
  }
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Stable: return "stable";
    case Status::CycleDetected: return "cycle";
    default: return "cap";
  }
}

PotentialReport check_potential_step(const Game& g, const Partition& before, const std::vector<Node>& coalition,
                                     const Partition& after) {
  PotentialReport r;
  ExtInt fb = global_utility(g, before);
  if (fb.is_neg_inf() || g.directed()) {
    r.applicable = false;
    return r;
  }
  r.delta = global_utility(g, after) - fb;
  std::int64_t inner = static_cast<std::int64_t>(coalition.size());
  for (std::size_t i = 0; i < coalition.size(); ++i)
    for (std::size_t j = i + 1; j < coalition.size(); ++j) {
      Node a = coalition[i], b = coalition[j];
      std::int64_t w = g.w(a, b);
      if (w == kNegInf) {
        // Enemies cannot end in one group with finite utility.
        r.applicable = false;
        return r;
      }
      inner -= w;
      if (before.group_of(a) == before.group_of(b)) inner += w;
    }
  r.bound = 2 * inner;
  r.ok = r.delta >= ExtInt(r.bound);
  return r;
}

namespace {

struct Candidate {
  bool gossip = false;
  Deviation dev;
  GossipDeviation gos;
};

ExtInt gain_of(const Game& g, const Partition& p, const Candidate& c) {
  // A member leaving -inf gains "infinitely"; cap it to keep sums finite.
  constexpr std::int64_t kHuge = std::int64_t{1} << 60;
  std::int64_t total = 0;
  auto add = [&](ExtInt before, ExtInt after) {
    total += before.is_neg_inf() ? kHuge : (after - before).value();
  };
  if (c.gossip) {
    Partition q = apply_gossip(g, p, c.gos);
    for (Node x : {c.gos.u, c.gos.v}) add(utility(g, p, x), utility(g, q, x));
  } else {
    auto e = deviation_effect(g, p, c.dev);
    for (std::size_t i = 0; i < e.before.size(); ++i) add(e.before[i], e.after[i]);
  }
  return total;
}

std::optional<Candidate> choose(const Game& g, const Partition& p, int k, bool gossip, const Scheduler& sched,
                                std::mt19937_64& rng) {
  auto gossip_list = [&] {
    std::vector<Candidate> out;
    if (gossip)
      for (auto& gd : enumerate_gossip(g, p)) out.push_back({true, {}, gd});
    return out;
  };
  switch (sched.policy) {
    case Policy::FirstLex: {
      if (auto d = first_deviation(g, p, k)) return Candidate{false, *d, {}};
      auto gl = gossip_list();
      if (!gl.empty()) return gl.front();
      return std::nullopt;
    }
    case Policy::MinCoalition: {
      // A gossip pair counts as a coalition of two, ranked after 2-deviations.
      for (int s = 1; s <= std::max(k, 2); ++s) {
        std::optional<Deviation> found;
        if (s <= k)
          for_each_deviation(
              g, p, s,
              [&](const Deviation& d) {
                found = d;
                return false;
              },
              s);
        if (found) return Candidate{false, *found, {}};
        if (s == 2) {
          auto gl = gossip_list();
          if (!gl.empty()) return gl.front();
        }
      }
      return std::nullopt;
    }
    default: {
      std::vector<Candidate> all;
      for (auto& d : enumerate_deviations(g, p, k)) all.push_back({false, d, {}});
      for (auto& c : gossip_list()) all.push_back(c);
      if (all.empty()) return std::nullopt;
      if (sched.policy == Policy::Random) return all[rng() % all.size()];
      std::size_t best = 0;
      ExtInt best_gain = gain_of(g, p, all[0]);
      for (std::size_t i = 1; i < all.size(); ++i) {
        ExtInt gi = gain_of(g, p, all[i]);
        if (gi > best_gain) {
          best = i;
          best_gain = gi;
        }
      }
      return all[best];
    }
  }
}

}  // namespace

Step record_step(const Game& g, const Partition& before, const Deviation& d, const Partition& after, int index) {
  Step s;
  s.index = index;
  s.before_key = before.key();
  s.deviation = d;
  for (Node u : d.coalition) {
    s.util_before.push_back(utility(g, before, u));
    s.util_after.push_back(utility(g, after, u));
  }
  s.lambda_before = partition_vector(before);
  s.lambda_after = partition_vector(after);
  s.f_before = global_utility(g, before);
  s.f_after = global_utility(g, after);
  return s;
}

Trace run_dynamics(const Game& g, int k, const Scheduler& sched, const RunOptions& opts) {
  require(k >= 1, "k must be at least 1");
  std::mt19937_64 rng(sched.seed);
  Trace tr;
  tr.initial = opts.initial ? *opts.initial : Partition(g.n());
  require(tr.initial.n() == g.n(), "initial partition size differs from game");
  Partition cur = tr.initial;
  ExtInt f = global_utility(g, cur);
  bool uniform = g.is_uniform();
  std::unordered_set<std::string> seen;
  seen.insert(cur.key());
  tr.status = Status::StepCapReached;
  for (std::size_t step = 0;; ++step) {
    if (step >= opts.max_steps) {
      tr.status = first_deviation(g, cur, k) || (opts.gossip && !enumerate_gossip(g, cur).empty())
                      ? Status::StepCapReached
                      : Status::Stable;
      break;
    }
    auto c = choose(g, cur, k, opts.gossip, sched, rng);
    if (!c) {
      tr.status = Status::Stable;
      break;
    }
    Step s;
    s.index = static_cast<int>(step);
    s.gossip = c->gossip;
    Partition next;
    if (c->gossip) {
      s.deviation = {{c->gos.u, c->gos.v}, cur.group_of(c->gos.v)};
      next = apply_gossip(g, cur, c->gos);
    } else {
      s.deviation = c->dev;
      next = apply_deviation(g, cur, c->dev);
    }
    ExtInt fn = global_utility(g, next);
    if (opts.assert_potential && !c->gossip) {
      auto rep = check_potential_step(g, cur, s.deviation.coalition, next);
      if (rep.applicable && !rep.ok)
        throw std::logic_error("utility variation below bound at step " + std::to_string(step));
      if (uniform && !(partition_vector(next) > partition_vector(cur)))
        throw std::logic_error("partition vector did not increase at step " + std::to_string(step));
    }
    if (opts.record_steps) {
      s.before_key = cur.key();
      for (Node u : s.deviation.coalition) {
        s.util_before.push_back(utility(g, cur, u));
        s.util_after.push_back(utility(g, next, u));
      }
      s.lambda_before = partition_vector(cur);
      s.lambda_after = partition_vector(next);
      s.f_before = f;
      s.f_after = fn;
      tr.steps.push_back(std::move(s));
    }
    ++tr.num_steps;
    cur = std::move(next);
    f = fn;
    if (seen.size() >= opts.cycle_memory) seen.clear();  // cycles shorter than the cap are still caught
    if (!seen.insert(cur.key()).second) {
      tr.status = Status::CycleDetected;
      break;
    }
  }
  tr.final = cur;
  return tr;
}

}  // namespace ccg
