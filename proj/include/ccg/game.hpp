#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccg/errors.hpp"
#include "ccg/ext_int.hpp"

namespace ccg {

using Node = int;

// Sentinel stored in resolved weight matrices for enemy pairs.
inline constexpr std::int64_t kNegInf = INT64_MIN;

struct Weight {
  enum class Kind : std::uint8_t { Finite, NegInf, BestFriend };
  Kind kind = Kind::Finite;
  std::int64_t value = 0;

  static Weight finite(std::int64_t v) { return {Kind::Finite, v}; }
  static Weight neg_inf() { return {Kind::NegInf, 0}; }
  static Weight best_friend() { return {Kind::BestFriend, 0}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_neg_inf() const { return kind == Kind::NegInf; }
  bool is_best_friend() const { return kind == Kind::BestFriend; }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.kind == b.kind && (a.kind != Kind::Finite || a.value == b.value);
  }
  friend bool operator<(const Weight& a, const Weight& b);
  std::string str() const;
};

// Complete weighted graph. Symmetric by default; a directed game stores
// w(u,v) and w(v,u) independently and u's utility reads w(u,.).
class Game {
 public:
  explicit Game(int n, bool directed = false);

  int n() const { return n_; }
  bool directed() const { return directed_; }

  void set(Node u, Node v, Weight w);
  void set(Node u, Node v, std::int64_t w) { set(u, v, Weight::finite(w)); }
  void set_enemies(Node u, Node v) { set(u, v, Weight::neg_inf()); }

  // Declared weight, as stored.
  Weight weight(Node u, Node v) const;
  // Resolved weight: best friends evaluate to N, enemies to kNegInf.
  std::int64_t w(Node u, Node v) const {
    refresh();
    return resolved_[static_cast<std::size_t>(u) * n_ + v];
  }
  const std::int64_t* row(Node u) const {
    refresh();
    return resolved_.data() + static_cast<std::size_t>(u) * n_;
  }
  // True if either direction is -inf.
  bool enemies(Node u, Node v) const { return w(u, v) == kNegInf || w(v, u) == kNegInf; }

  // N = n * (max finite |w|, or 1 if none) + 1.
  std::int64_t best_friend_value() const;
  // Largest positive resolved weight (0 if there is none).
  std::int64_t max_positive() const;
  // Largest finite |w| over stored weights.
  std::int64_t max_abs_finite() const;

  void declare_weight_set(std::vector<Weight> ws);
  const std::vector<Weight>& weight_set() const { return weight_set_; }
  // Weights actually present (including 0 when some pair is absent/zero).
  std::vector<Weight> used_weights() const;
  // Throws InputError if a stored weight is outside the declared set plus 0.
  void validate() const;

  bool is_symmetric() const;
  // Every non-enemy pair has the same positive weight.
  bool is_uniform() const;
  // Uniform with no enemy pair at all.
  bool is_empty_conflict_uniform() const;

  friend bool operator==(const Game& a, const Game& b);

 private:
  void check_pair(Node u, Node v) const;
  void refresh() const;

  int n_;
  bool directed_;
  std::vector<Weight> raw_;
  std::vector<Weight> weight_set_;
  mutable std::vector<std::int64_t> resolved_;
  mutable bool dirty_ = true;
  mutable std::int64_t bf_value_ = 1;
};

Game uniform_game(int n, const std::vector<std::pair<Node, Node>>& conflicts = {});

// Set partition of 0..n-1 kept in canonical form: groups sorted by size
// descending then smallest member ascending; members sorted.
class Partition {
 public:
  Partition() = default;
  explicit Partition(int n);  // all singletons
  Partition(int n, std::vector<std::vector<Node>> groups);
  static Partition from_labels(const std::vector<int>& labels);
  static Partition single_group(int n);

  int n() const { return n_; }
  std::size_t num_groups() const { return groups_.size(); }
  const std::vector<std::vector<Node>>& groups() const { return groups_; }
  const std::vector<Node>& group(int g) const { return groups_[g]; }
  int group_of(Node u) const { return label_[u]; }
  const std::vector<int>& labels() const { return label_; }

  // Restricted-growth string of the set partition; equal iff same partition.
  std::string key() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.groups_ == b.groups_; }
  std::string str() const;

 private:
  void canonicalize();

  int n_ = 0;
  std::vector<std::vector<Node>> groups_;
  std::vector<int> label_;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const;
};

// Counts of groups by size, count[i] = number of groups of size i (index 0 unused).
struct PartitionVector {
  std::vector<int> count;

  int n() const { return static_cast<int>(count.size()) - 1; }
  int operator[](int size) const { return count[size]; }
  // Lexicographic comparison starting from the largest size.
  friend std::strong_ordering operator<=>(const PartitionVector& a, const PartitionVector& b);
  friend bool operator==(const PartitionVector& a, const PartitionVector& b) { return a.count == b.count; }
  // Sizes of the groups in non-increasing order.
  std::vector<int> sizes() const;
  static PartitionVector from_sizes(int n, const std::vector<int>& sizes);
  std::string str() const;
};

PartitionVector partition_vector(const Partition& p);

ExtInt utility(const Game& g, const Partition& p, Node u);
ExtInt global_utility(const Game& g, const Partition& p);
std::vector<ExtInt> utilities(const Game& g, const Partition& p);

// Graph of positive-weight pairs as adjacency lists.
std::vector<std::vector<Node>> friendship_graph(const Game& g);
// Shortest cycle length, nullopt when acyclic.
std::optional<int> girth(const std::vector<std::vector<Node>>& adj);

std::vector<std::pair<Node, Node>> find_twins(const Game& g);
// Equivalence classes of the twin relation (singletons included).
std::vector<std::vector<Node>> twin_classes(const Game& g);

Partition canonicalize(const Partition& p);

}  // namespace ccg
