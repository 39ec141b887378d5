#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccg/game.hpp"

namespace ccg {

inline constexpr int kNewGroup = -1;

// Coalition moving into one group. target is a canonical group index of the
// partition the deviation was computed on, or kNewGroup.
struct Deviation {
  std::vector<Node> coalition;  // sorted
  int target = kNewGroup;
  friend bool operator==(const Deviation&, const Deviation&) = default;
  std::string str() const;
};

struct GossipDeviation {
  Node u = 0, v = 0;  // u < v
  friend bool operator==(const GossipDeviation&, const GossipDeviation&) = default;
};

// Per-node sums of weights into every group of a partition. Enemy weights are
// counted separately so a sum can be tested for -inf without sentinels.
class GroupSums {
 public:
  GroupSums(const Game& g, const Partition& p);
  std::int64_t sum(Node u, int group) const { return sum_[idx(u, group)]; }
  int enemies(Node u, int group) const { return enemy_[idx(u, group)]; }
  ExtInt value(Node u, int group) const {
    return enemies(u, group) ? ExtInt::neg_inf() : ExtInt(sum(u, group));
  }
  ExtInt current(Node u) const { return value(u, p_->group_of(u)); }

 private:
  std::size_t idx(Node u, int g) const { return static_cast<std::size_t>(u) * groups_ + g; }
  const Partition* p_;
  std::size_t groups_;
  std::vector<std::int64_t> sum_;
  std::vector<int> enemy_;
};

// Visits valid deviations of size <= k in FirstLex order: coalitions as
// sorted tuples in lexicographic order, then targets by group index with the
// new group last. The visitor returns false to stop. min_size filters out
// smaller coalitions without changing the order.
void for_each_deviation(const Game& g, const Partition& p, int k,
                        const std::function<bool(const Deviation&)>& visit, int min_size = 1);

std::vector<Deviation> enumerate_deviations(const Game& g, const Partition& p, int k);
std::optional<Deviation> first_deviation(const Game& g, const Partition& p, int k);
std::vector<GossipDeviation> enumerate_gossip(const Game& g, const Partition& p);

// Utilities of coalition members before and after the move.
struct MoveEffect {
  std::vector<ExtInt> before, after;
  bool improves() const;
};
MoveEffect deviation_effect(const Game& g, const Partition& p, const Deviation& d);

// Moves the coalition; throws PreconditionError if some member does not
// strictly gain.
Partition apply_deviation(const Game& g, const Partition& p, const Deviation& d);
Partition apply_gossip(const Game& g, const Partition& p, const GossipDeviation& d);

enum class Policy { FirstLex, Random, MinCoalition, MaxUtilityGain };
struct Scheduler {
  Policy policy = Policy::FirstLex;
  std::uint64_t seed = 0;
  static Scheduler first_lex() { return {}; }
  static Scheduler random(std::uint64_t seed) { return {Policy::Random, seed}; }
  static Scheduler min_coalition() { return {Policy::MinCoalition, 0}; }
  static Scheduler max_gain() { return {Policy::MaxUtilityGain, 0}; }
};
std::optional<Policy> parse_policy(const std::string& s);
std::string policy_name(Policy p);

enum class Status { Stable, CycleDetected, StepCapReached };
std::string status_name(Status s);

struct Step {
  int index = 0;
  std::string before_key;
  bool gossip = false;
  Deviation deviation;  // for gossip: coalition = {u, v}, target = group of v
  std::vector<ExtInt> util_before, util_after;
  PartitionVector lambda_before, lambda_after;
  ExtInt f_before, f_after;
};

struct Trace {
  Partition initial;
  Partition final;
  std::vector<Step> steps;
  std::size_t num_steps = 0;  // equals steps.size() unless recording was off
  Status status = Status::Stable;
};

struct RunOptions {
  std::size_t max_steps = 1'000'000;
  bool gossip = false;
  // Check the utility-variation lower bound on every applied deviation.
  bool assert_potential = false;
  bool record_steps = true;
  std::optional<Partition> initial;
  // Visited-set cap. When full the set is cleared, so any cycle shorter than
  // the cap is still reported (one lap later).
  std::size_t cycle_memory = 2'000'000;
};

Step record_step(const Game& g, const Partition& before, const Deviation& d, const Partition& after, int index);

Trace run_dynamics(const Game& g, int k, const Scheduler& sched, const RunOptions& opts = {});

struct PotentialReport {
  ExtInt delta;
  std::int64_t bound = 0;
  bool applicable = true;  // false when f(P) is -inf
  bool ok = true;
};
// Compares f(P') - f(P) with 2[|S| - sum over coalition pairs of w + sum over
// coalition pairs that shared a group in P of w].
PotentialReport check_potential_step(const Game& g, const Partition& before, const std::vector<Node>& coalition,
                                     const Partition& after);

}  // namespace ccg
