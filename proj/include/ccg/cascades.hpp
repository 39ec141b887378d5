#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccg/game.hpp"

namespace ccg {

// Integer vector indexed by group size 1..n (index 0 unused). Single moves
// and sums of moves on a partition vector.
class DeviationVector {
 public:
  enum class Kind { Delta4, Gamma3, Alpha, Composite };

  DeviationVector() = default;
  explicit DeviationVector(int n, Kind kind = Kind::Composite) : kind_(kind), v_(n + 1, 0) {}

  int n() const { return static_cast<int>(v_.size()) - 1; }
  Kind kind() const { return kind_; }
  long long operator[](int size) const { return size >= 1 && size <= n() ? v_[size] : 0; }
  void add(int size, long long x);
  DeviationVector& operator+=(const DeviationVector& o);
  friend bool operator==(const DeviationVector& a, const DeviationVector& b) { return a.v_ == b.v_; }

  // sum of size * entry; zero for every vector built from moves.
  long long node_balance() const;
  // (size, value) for nonzero entries, largest size first.
  std::vector<std::pair<int, long long>> nonzero() const;
  std::string str() const;

 private:
  Kind kind_ = Kind::Composite;
  std::vector<long long> v_;
};

DeviationVector delta4(int p, int n);
DeviationVector gamma3(int p, int n);
DeviationVector alpha(int p, int q, int n);
inline DeviationVector alpha1(int p, int n) { return alpha(p, 0, n); }

// The minimal window holding every nonzero entry reads the same reversed.
bool is_symmetric(const DeviationVector& v);

// One primitive move. Delta4 at p: four nodes leave distinct groups of size
// p-1 for a group of size p-4. Gamma3 at p: three nodes from groups of size
// p-1 into one of size p-3. Alpha(p,q): one node from a group of size q+1
// into one of size p-1 (q = 0 means the source is a singleton).
struct VectorMove {
  DeviationVector::Kind kind = DeviationVector::Kind::Alpha;
  int p = 0;
  int q = 0;

  static VectorMove delta(int p) { return {DeviationVector::Kind::Delta4, p, 0}; }
  static VectorMove gamma(int p) { return {DeviationVector::Kind::Gamma3, p, 0}; }
  static VectorMove alpha(int p, int q) { return {DeviationVector::Kind::Alpha, p, q}; }

  int movers() const;
  int source_size() const;
  int target_size() const;
  // (size, change) pairs of the move's vector.
  std::vector<std::pair<int, int>> entries() const;
  // Throws PreconditionError outside the move's range.
  void validate() const;
  friend bool operator==(const VectorMove&, const VectorMove&) = default;
  std::string str() const;
};

// alpha[p, p-d, q+d, q] as the d single moves alpha[p-j, q+j], j < d.
std::vector<VectorMove> alpha_run(int p, int pd, int qd, int q);

class VectorSequence {
 public:
  VectorSequence() = default;
  explicit VectorSequence(std::vector<VectorMove> moves) : moves_(std::move(moves)) {}

  const std::vector<VectorMove>& moves() const { return moves_; }
  std::size_t size() const { return moves_.size(); }
  void push(const VectorMove& m) { moves_.push_back(m); }
  void append(const std::vector<VectorMove>& ms) { moves_.insert(moves_.end(), ms.begin(), ms.end()); }
  void append(const VectorSequence& s) { append(s.moves_); }

  // Every size parameter lowered by i.
  VectorSequence shift(int i) const;
  DeviationVector total(int n) const;
  int max_size() const;
  int min_size() const;

 private:
  std::vector<VectorMove> moves_;
};

// Smallest h with every prefix sum >= -h at every size; 0 for no moves.
int balance(const VectorSequence& seq);

// ---------------------------------------------------------------- realization

struct ConcreteMove {
  std::vector<Node> movers;
  int source_size = 0;  // size of each source group before the move
  int target_size = 0;  // size of the target group before the move
  Node target_min = -1;
  std::int64_t util_before = 0, util_after = 0;  // per mover (all equal)
};

struct Realization {
  std::size_t moves = 0;
  std::vector<ConcreteMove> trace;  // filled when recording
  Partition final;
  bool vectors_agree = true;  // live vector = start vector + prefix sum after every move
};

struct RealizeOptions {
  bool record = false;
  // Nodes that are never selected (parked singletons).
  std::vector<Node> frozen;
};

// Partition with c groups of every size 1..L on c L(L+1)/2 nodes followed by
// `extra` singletons; groups use consecutive node ids, largest sizes first.
Partition staircase_partition(int L, int c, int extra = 0);

// Plays the sequence on the conflict-free uniform game: movers come from the
// groups of the required size with the smallest members, each mover is the
// smallest member of its group, and the target is the next such group.
// Throws InsufficientGroups when the live partition lacks a required group.
Realization realize(const VectorSequence& seq, const Partition& p0, const RealizeOptions& opts = {});

// ---------------------------------------------------------------- k = 3

enum class K3Schedule { OuterAscending, TopDown };

struct K3Options {
  K3Schedule schedule = K3Schedule::OuterAscending;
  std::optional<int> c;  // default: the measured balance
  bool realize = true;
};

struct K3Result {
  int t = 0, L = 0, c = 0;
  long long n = 0;
  VectorSequence seq;
  int balance = 0;
  // Summed vectors of the four nested stages at the top size L.
  DeviationVector stage[4];
  std::optional<Realization> realization;
};

K3Result build_k3(int t, const K3Options& opts = {});
inline long long k3_move_count(long long t) { return t * (t - 3) * (t - 1) * (t + 1); }

// ---------------------------------------------------------------- k = 4

struct ZetaLevel {
  int level = 1;
  VectorSequence seq;
  DeviationVector vec;
  int s = 0;        // width of the nonzero window
  int t1 = 2, t2 = 3;
  int a = 0;        // shifted copies used to build this level from the previous one, minus one
  int balance = 0;
  bool symmetric = false;
  bool good = false;
};

// Good Property at top size L: window [L-s+1, L] symmetric with s even and
// upper half exactly +1 at L, -1 at L-t1, -1 at L-t2, +1 at L-s/2+1.
bool has_good_property(const DeviationVector& v, int L, int s, int t1, int t2);

ZetaLevel build_zeta1(int t, int L);
ZetaLevel build_zeta_next(const ZetaLevel& z, int L);

struct K4Options {
  std::optional<int> c;
  bool realize = true;
};

struct K4Result {
  int t = 0, T = 0, L = 0, c = 0, c1 = 0;
  long long n = 0;
  std::vector<ZetaLevel> levels;
  std::optional<Realization> realization;
};

// Levels 1..T with T = floor(log2 t) + 1 and L = 2(t^3 + t).
K4Result build_k4(int t, const K4Options& opts = {});
int k4_levels(int t);
int k4_top(int t);

struct GrowthRow {
  int t = 0, T = 0;
  long long n = 0;
  std::size_t first = 0, last = 0;  // |S_1| and |S_T|
  double ratio = 0;                 // |S_T| / t^log2(t)
  bool recursion_ok = true;         // |S_{i+1}| >= (s_i / 2^(i+2) - 6) |S_i| at every level
  bool good_ok = true;
};
std::vector<GrowthRow> measure_growth(const std::vector<int>& ts);

}  // namespace ccg
