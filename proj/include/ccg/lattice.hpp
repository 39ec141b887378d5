#pragma once

#include <cstdint>
#include <vector>

#include "ccg/dynamics.hpp"
#include "ccg/game.hpp"

namespace ccg {

// Non-increasing positive parts; trailing zeros are never stored.
using IntegerPartition = std::vector<int>;

IntegerPartition to_integer_partition(const PartitionVector& v);
PartitionVector to_partition_vector(const IntegerPartition& q, int n);
std::vector<IntegerPartition> all_integer_partitions(int n);

// Prefix sums of a are >= those of b at every length.
bool dominates(const IntegerPartition& a, const IntegerPartition& b);
// a covers b: one unit moves from part k to an earlier part j, with k = j+1
// or b_j = b_k.
bool covers(const IntegerPartition& a, const IntegerPartition& b);
std::vector<IntegerPartition> covering_successors(const IntegerPartition& q);
std::vector<IntegerPartition> covering_predecessors(const IntegerPartition& q);

// Longest covering chain from 1^n to (n).
std::uint64_t longest_chain(int n);
// Longest chain itself, bottom to top.
std::vector<IntegerPartition> longest_chain_path(int n);

// Whether a sequence of 1-deviations on the conflict-free uniform game leads
// from a partition with vector `from` to one with vector `to`.
bool deviation_reaches(const IntegerPartition& from, const IntegerPartition& to, int n);

struct ElementaryMove {
  Deviation deviation;
  Partition after;
};
// Replaces one 1-deviation on the conflict-free uniform game by 1-deviations
// whose vector effects are covering steps. The final partition vector equals
// the one the original move produces.
std::vector<ElementaryMove> decompose_to_covering_steps(const Partition& p, const Deviation& d);

}  // namespace ccg
