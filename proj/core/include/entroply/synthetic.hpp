#pragma once

#include <cstdint>

namespace entroply::search {

enum class Ordering : std::uint8_t {
  Perfect,  // best successor first at every node
  Random,   // per-node shuffle from order_seed
  Worst,    // weakest successor first at every node
};

/// Uniform game tree: every node above the leaves has exactly `branching`
/// successors, leaf values are a seeded permutation (all distinct).
struct SyntheticTree {
  int branching = 2;
  int depth = 1;
  std::uint64_t leaf_seed = 0;
  Ordering ordering = Ordering::Perfect;
  std::uint64_t order_seed = 0;
};

struct SyntheticResult {
  long long value = 0;
  std::uint64_t leaf_count = 0;
  std::uint64_t node_count = 0;
};

/// Alpha-beta over the synthetic tree, counting evaluated leaves. With
/// Perfect ordering the leaf count hits the best-case bound exactly; with
/// Worst ordering it degenerates to branching^depth.
SyntheticResult synthetic_alphabeta(const SyntheticTree& t);

/// Pruning-free negamax reference. Guarded to branching^depth <= 10^7.
long long brute_minimax(const SyntheticTree& t);

/// b^floor(n/2) + b^ceil(n/2) - 1, the best-case leaf count of alpha-beta
/// on a uniform (b, n) tree. Throws on 64-bit overflow.
std::uint64_t knuth_best_case(std::uint64_t b, std::uint64_t n);

}  // namespace entroply::search
