#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccg/dynamics.hpp"
#include "ccg/game.hpp"
#include "ccg/stability.hpp"

namespace ccg {

using Rational = boost::multiprecision::cpp_rational;

std::string rational_str(const Rational& r);

// Rational extended with -inf, for utilities under a sharing function.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  ExtRational(std::int64_t v) : v_(v) {}         // NOLINT(google-explicit-constructor)
  static ExtRational neg_inf() {
    ExtRational x;
    x.neg_inf_ = true;
    return x;
  }
  bool is_neg_inf() const { return neg_inf_; }
  const Rational& value() const;

  ExtRational& operator+=(const ExtRational& o);
  friend ExtRational operator+(ExtRational a, const ExtRational& b) { return a += b; }
  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend bool operator<(const ExtRational& a, const ExtRational& b);
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }
  std::string str() const;

 private:
  Rational v_ = 0;
  bool neg_inf_ = false;
};

// Value of sharing g groups with a node at weight w.
struct HFunction {
  enum class Family { Indicator, LinearEps, Custom };
  Family family = Family::Indicator;
  Rational eps = 0;
  std::function<Rational(int, std::int64_t)> fn;  // Custom only
  std::string label = "indicator";

  static HFunction indicator();
  // h(g, w) = (1 + eps (g-1)) w for g >= 1.
  static HFunction linear_eps(Rational eps);
  // fn is consulted for g >= 1 only; h(0, w) = 0 always.
  static HFunction custom(std::string label, std::function<Rational(int, std::int64_t)> fn);

  Rational operator()(int g, std::int64_t w) const;
  // Resolved weights: kNegInf gives -inf for g >= 1.
  ExtRational eval(int g, std::int64_t w) const;
  std::string str() const;
};

// 1 / (4 N) for the game's best-friend value N.
Rational default_eps(const Game& g);

// h(0,w) = 0, h(g,0) = 0, h(1,w) = w, w -> h(g,w) non-decreasing and
// g -> h(g,w) non-decreasing for w >= 0, on g in 0..max_g and the given weights.
bool check_h_properties(const HFunction& h, int max_g, std::vector<std::int64_t> ws);
// h(g,w) - h(g-1,w) non-increasing in g >= 1 for every given w >= 0.
bool is_concave(const HFunction& h, int max_g, const std::vector<std::int64_t>& ws);

// Every node belongs to exactly q groups. Groups are kept sorted by size
// descending, then by member list; identical groups may repeat.
class Configuration {
 public:
  Configuration() = default;
  // Each node in q singleton groups.
  Configuration(int n, int q);
  Configuration(int n, int q, std::vector<std::vector<Node>> groups);
  static Configuration from_partition(const Partition& p);

  int n() const { return n_; }
  int q() const { return q_; }
  const std::vector<std::vector<Node>>& groups() const { return groups_; }
  // Group indices holding u, ascending.
  const std::vector<int>& memberships(Node u) const { return member_[u]; }
  int shared(Node u, Node v) const;
  bool contains(int group, Node u) const;
  std::string key() const;
  std::string str() const;
  friend bool operator==(const Configuration& a, const Configuration& b) { return a.groups_ == b.groups_; }

 private:
  void canonicalize();
  int n_ = 0, q_ = 0;
  std::vector<std::vector<Node>> groups_;
  std::vector<std::vector<int>> member_;
};

ExtRational config_utility(const Game& g, const HFunction& h, const Configuration& c, Node u);
ExtRational config_global_utility(const Game& g, const HFunction& h, const Configuration& c);

// Coalition joining one group. drop[i] is the group index member i leaves,
// or -1 when it already belongs to the target.
struct ConfigDeviation {
  std::vector<Node> coalition;
  std::vector<int> drop;
  int target = kNewGroup;
  std::string str() const;
};

// Applies the moves without checking gains.
Configuration apply_config_moves(const Configuration& c, const ConfigDeviation& d);

// Valid deviations of size <= k: every member strictly gains and at least
// one member moves. Coalitions in lexicographic order, then targets (new
// group last), then drop choices. Visitor returns false to stop.
void for_each_config_deviation(const Game& g, const HFunction& h, const Configuration& c, int k,
                               const std::function<bool(const ConfigDeviation&)>& visit);
std::optional<ConfigDeviation> first_config_deviation(const Game& g, const HFunction& h, const Configuration& c,
                                                      int k);
bool is_k_stable_config(const Game& g, const HFunction& h, const Configuration& c, int k);

struct ConfigStep {
  ConfigDeviation deviation;
  std::vector<ExtRational> util_before, util_after;
  ExtRational f_before, f_after;
};

struct ConfigTrace {
  Configuration initial, final;
  std::vector<ConfigStep> steps;
  std::size_t num_steps = 0;
  Status status = Status::Stable;
};

struct MultiOptions {
  int k = 1;
  std::size_t max_steps = 1'000'000;
  bool record_steps = true;
  std::optional<Configuration> initial;
};

// Starts from q singleton copies per node. Requires a symmetric game, where
// every applied 1-deviation raises the global utility; that is asserted.
ConfigTrace run_multichannel_dynamics(const Game& g, const HFunction& h, int q, const Scheduler& sched,
                                      const MultiOptions& opts = {});

// Configurations in which no group holds a hostile pair. Copies of one node
// go to distinct groups. Throws SearchTooLarge beyond the budget.
void for_each_configuration(const Game& g, int q, const std::function<bool(const Configuration&)>& visit,
                            const SearchOptions& opts = {});
std::optional<Configuration> exists_k_stable_config(const Game& g, const HFunction& h, int q, int k,
                                                    const SearchOptions& opts = {});
// Smallest q <= max_q (default n) whose best configuration reaches U.
// Throws NotAchievable otherwise.
int min_channels(const Game& g, const HFunction& h, const Rational& U, int max_q = -1,
                 const SearchOptions& opts = {});

// Maximum partition of the transformed game recovers a maximum configuration
// with q channels. Weights are scaled so the gadget weights are integers.
struct TransformLayout {
  Game game{1};
  int base_n = 0, q = 0;
  Rational scale = 4;
  // max f(G') = offset + scale / 4 * max f_q(G)
  Rational offset = 0;
  Node copy(Node u, int i) const { return u * q + i; }
  Configuration to_configuration(const Partition& p) const;
};
TransformLayout multichannel_transform(const Game& g, int q, const HFunction& h);

// ---------------------------------------------------------------- hypergraphs

// Weighted subsets of size 2..t (t = 0 means unbounded).
class HyperGame {
 public:
  explicit HyperGame(int n, int t = 0) : n_(n), t_(t) {}
  int n() const { return n_; }
  int t() const { return t_; }
  // Sorts the subset; replaces an existing weight.
  void add(std::vector<Node> nodes, Weight w);
  const std::map<std::vector<Node>, Weight>& edges() const { return edges_; }
  // Pairwise game as a hypergraph.
  static HyperGame from_game(const Game& g);

 private:
  int n_, t_;
  std::map<std::vector<Node>, Weight> edges_;
};

ExtInt hyper_utility(const HyperGame& H, const Partition& p, Node u);
// Each hyperedge inside a group counted once.
ExtInt hyper_potential(const HyperGame& H, const Partition& p);

struct HyperStep {
  Deviation deviation;
  ExtInt phi_before, phi_after;
  std::vector<ExtInt> util_before, util_after;
};
struct HyperTrace {
  Partition initial, final;
  std::vector<HyperStep> steps;
  std::size_t num_steps = 0;
  Status status = Status::Stable;
};
struct HyperOptions {
  int k = 1;
  std::size_t max_steps = 1'000'000;
  bool record_steps = true;
};
// For k = 1 asserts that each step changes the potential by the mover's gain.
HyperTrace run_hyper_dynamics(const HyperGame& H, const Scheduler& sched, const HyperOptions& opts = {});
bool is_k_stable_hyper(const HyperGame& H, const Partition& p, int k);

// Shortest Berge cycle in the positive-weight hypergraph; nullopt if acyclic.
std::optional<int> berge_girth(const HyperGame& H);
int hyper_components(const HyperGame& H);
// |V| = sum(|e| - 1) + components on the positive hyperedges. Requires an
// acyclic input.
bool acyclic_count_check(const HyperGame& H);

}  // namespace ccg
