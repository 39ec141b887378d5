#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccg/extensions.hpp"
#include "ccg/game.hpp"
#include "ccg/stability.hpp"

namespace ccg {

struct ValuedPartition {
  Partition partition;
  ExtInt value;
};

// Branch and bound over partitions in restricted-growth order. Among maximum
// partitions the first in that order is returned. The budget caps search
// nodes.
ValuedPartition max_partition(const Game& g, const SearchOptions& opts = {});

// Minimum global utility over k-stable partitions, first in enumeration
// order on ties.
std::optional<ValuedPartition> worst_k_stable(const Game& g, int k, const SearchOptions& opts = {});

struct PriceOfAnarchy {
  enum class Kind { Finite, Infinite, Undefined };
  Kind kind = Kind::Undefined;
  Rational ratio = 0;        // Finite only
  bool zero_over_zero = false;  // both optima 0, ratio reported as 1
  ExtInt best, worst;
  std::optional<Partition> best_partition, worst_partition;
  std::string str() const;
};

PriceOfAnarchy price_of_anarchy(const Game& g, int k, const SearchOptions& opts = {});
// Ratio of two witness values, with the same conventions.
PriceOfAnarchy witness_ratio(const Game& g, const Partition& best, const Partition& worst);

struct DeltaBoundReport {
  int delta_plus = 0;            // most positive neighbours of one node
  long long m_plus = 0;          // positive pairs
  std::int64_t w_p = 0;          // largest positive weight
  long long max_upper = 0;       // 2 m_plus w_p
  std::size_t partitions = 0;    // k-stable partitions examined
  bool key_step = true;          // every positive pair has an endpoint with positive utility
  bool count_ok = true;          // at least m_plus / delta_plus positive nodes
  bool upper_ok = true;          // f(P+) <= 2 m_plus w_p when the optimum is known
  std::optional<PriceOfAnarchy> poa;
  Rational bound = 0;            // 2 delta_plus w_p
  bool ratio_ok = true;          // poa ratio <= bound when finite
  bool ok() const { return key_step && count_ok && upper_ok && ratio_ok; }
};

// Checks the chain on every k-stable partition (exhaustive). Symmetric games.
DeltaBoundReport check_delta_bound(const Game& g, int k, const SearchOptions& opts = {});
// Same checks on given k-stable partitions; `best` is a known optimum or a
// lower bound witness for it.
DeltaBoundReport check_delta_bound_on(const Game& g, const std::vector<Partition>& stable,
                                      const std::optional<Partition>& best);

struct ValuedConfiguration {
  Configuration config;
  ExtRational value;
};
ValuedConfiguration max_configuration(const Game& g, const HFunction& h, int q, const SearchOptions& opts = {});
std::optional<ValuedConfiguration> worst_k_stable_config(const Game& g, const HFunction& h, int q, int k,
                                                         const SearchOptions& opts = {});

// Exact ratio of two configuration optima, same conventions as above.
struct ConfigPriceOfAnarchy {
  PriceOfAnarchy::Kind kind = PriceOfAnarchy::Kind::Undefined;
  Rational ratio = 0;
  bool zero_over_zero = false;
  std::optional<ValuedConfiguration> best, worst;
  std::string str() const;
};
ConfigPriceOfAnarchy price_of_anarchy_config(const Game& g, const HFunction& h, int q, int k,
                                             const SearchOptions& opts = {});

// Worst equilibrium reached by multichannel 1-deviation dynamics, sampled
// over random schedules, with the concrete bounds checked on every sample:
// at most 2s nodes leave their singletons after s steps, 2 s n >= m_plus,
// and f(best) / f(C_s) <= 2 h(q, w_p) m_plus / s. When every weight is
// positive or -inf, also f(best) / f(C_s) <= 2 h(q, w_p) (1 + 2n/q).
struct GreedyBoundReport {
  int runs = 0;
  ExtRational best, worst;  // f(C+) and the lowest sampled f(C_s)
  std::size_t worst_steps = 0;
  bool touched_ok = true, count_ok = true, general_ok = true;
  bool positive_applies = false, positive_ok = true;
  bool ok() const { return touched_ok && count_ok && general_ok && positive_ok; }
};
GreedyBoundReport sample_greedy_bounds(const Game& g, const HFunction& h, int q, int runs, std::uint64_t seed,
                                       const SearchOptions& opts = {});

}  // namespace ccg
