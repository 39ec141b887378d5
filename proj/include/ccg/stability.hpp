#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "ccg/dynamics.hpp"
#include "ccg/game.hpp"

namespace ccg {

bool is_k_stable(const Game& g, const Partition& p, int k, bool gossip = false);

struct SearchOptions {
  std::uint64_t budget = 50'000'000;  // partitions visited, or DFS states
  // Keep every twin class inside one group. Twins share a group in every
  // 1-stable partition, so existence answers are unchanged (symmetric games).
  bool merge_twins = false;
};

// Visits every partition with no enemy pair inside a group, in
// restricted-growth-string order. Labels are the RGS. Return false to stop.
// Throws SearchTooLarge once more than budget partitions have been visited.
void for_each_feasible_partition(const Game& g, const std::function<bool(const std::vector<int>&)>& visit,
                                 const SearchOptions& opts = {});
std::uint64_t count_feasible_partitions(const Game& g, const SearchOptions& opts = {});

std::optional<Partition> exists_k_stable(const Game& g, int k, bool gossip = false, const SearchOptions& opts = {});
// All k-stable partitions (budgeted like exists_k_stable).
std::vector<Partition> all_k_stable(const Game& g, int k, bool gossip = false, const SearchOptions& opts = {});

struct LongestResult {
  std::optional<std::uint64_t> length;  // nullopt: a deviation cycle is reachable
  Trace witness;
};
// Longest sequence of k-deviations starting from all singletons.
LongestResult longest_sequence(const Game& g, int k, const SearchOptions& opts = {});

std::uint64_t L1_formula(int n);
std::uint64_t L_empty(int k, int n);
std::uint64_t integer_partition_count(int n);

}  // namespace ccg
