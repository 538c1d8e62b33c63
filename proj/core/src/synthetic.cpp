#include "entroply/synthetic.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace entroply::search {

namespace {

constexpr std::uint64_t kMaxLeaves = 10'000'000;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("tree size overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Tree {
  int b;
  int n;
  std::vector<long long> leaves;
  // values[level][i], negamax convention: a node's value is from the
  // perspective of the player to move there.
  std::vector<std::vector<long long>> values;

  explicit Tree(const SyntheticTree& t) : b(t.branching), n(t.depth) {
    if (b < 2 || n < 1) throw std::invalid_argument("synthetic tree needs b >= 2, n >= 1");
    std::uint64_t leaf_count = checked_pow(static_cast<std::uint64_t>(b),
                                           static_cast<std::uint64_t>(n));
    if (leaf_count > kMaxLeaves) {
      throw std::invalid_argument("synthetic tree too large to enumerate");
    }
    leaves.resize(leaf_count);

    if (t.ordering == Ordering::Worst) {
      fill_adversarial_leaves(t.leaf_seed);
    } else {
      // Distinct values, a shuffled 0..leaves-1. Distinctness keeps
      // cutoff decisions unambiguous.
      std::iota(leaves.begin(), leaves.end(), 0);
      std::mt19937_64 rng(t.leaf_seed);
      std::shuffle(leaves.begin(), leaves.end(), rng);
    }

    values.resize(static_cast<std::size_t>(n) + 1);
    values[static_cast<std::size_t>(n)] = leaves;
    for (int level = n - 1; level >= 0; --level) {
      auto& row = values[static_cast<std::size_t>(level)];
      const auto& below = values[static_cast<std::size_t>(level) + 1];
      row.resize(below.size() / static_cast<std::size_t>(b));
      for (std::size_t i = 0; i < row.size(); ++i) {
        long long best = std::numeric_limits<long long>::min();
        for (int j = 0; j < b; ++j) {
          best = std::max(best, -below[i * static_cast<std::size_t>(b) +
                                       static_cast<std::size_t>(j)]);
        }
        row[i] = best;
      }
    }
  }

  // Pessimally ordered values. Sorting children weakest-first makes every
  // node see strictly improving payoffs that always stay inside the open
  // alpha-beta window, so no branch is ever cut and all b^n leaves are
  // evaluated. Built by interval nesting: a node with target value v and
  // admissible payoff window (lo, hi) spreads its child payoffs over
  // (lo, v] and hands child j the window (-hi, -c_{j-1}).
  void fill_adversarial_leaves(std::uint64_t seed) {
    struct Frame {
      std::uint64_t first_leaf;
      int level;
      long long value, lo, hi;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0, 0, -(1LL << 60), 1LL << 60});
    std::vector<long long> payoffs(static_cast<std::size_t>(b));

    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      if (f.level == n) {
        leaves[f.first_leaf] = f.value;
        continue;
      }
      assert(f.lo < f.value && f.value < f.hi);
      long long span = f.value - f.lo;
      assert(span > b + 1);
      for (int j = 1; j < b; ++j) {
        // Deterministic jitter keeps values distinct across seeds without
        // leaving the (lo, value) interval.
        long long step = span / b;
        long long wobble = static_cast<long long>(
            splitmix64(seed ^ (f.first_leaf * 131 + static_cast<std::uint64_t>(j))) %
            static_cast<std::uint64_t>(std::max<long long>(1, step / 4)));
        payoffs[static_cast<std::size_t>(j - 1)] = f.lo + step * j + wobble - step / 8;
      }
      payoffs[static_cast<std::size_t>(b - 1)] = f.value;

      std::uint64_t leaves_per_child =
          checked_pow(static_cast<std::uint64_t>(b),
                      static_cast<std::uint64_t>(n - f.level - 1));
      long long previous = f.lo;
      for (int j = 0; j < b; ++j) {
        long long payoff = payoffs[static_cast<std::size_t>(j)];
        assert(previous < payoff && payoff < f.hi);
        stack.push_back({f.first_leaf + leaves_per_child * static_cast<std::uint64_t>(j),
                         f.level + 1, -payoff, -f.hi, -previous});
        previous = payoff;
      }
    }
  }

  long long child_value(int level, std::uint64_t node, int j) const {
    return values[static_cast<std::size_t>(level) + 1]
                 [node * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(j)];
  }

  // Child visit order at (level, node). The node's payoff for child j is
  // -child_value, so Perfect = ascending child values, Worst = descending.
  void child_order(const SyntheticTree& t, int level, std::uint64_t node,
                   std::vector<int>& order) const {
    order.resize(static_cast<std::size_t>(b));
    std::iota(order.begin(), order.end(), 0);
    switch (t.ordering) {
      case Ordering::Perfect:
        std::sort(order.begin(), order.end(), [&](int x, int y) {
          return child_value(level, node, x) < child_value(level, node, y);
        });
        break;
      case Ordering::Worst:
        std::sort(order.begin(), order.end(), [&](int x, int y) {
          return child_value(level, node, x) > child_value(level, node, y);
        });
        break;
      case Ordering::Random: {
        std::mt19937_64 rng(splitmix64(t.order_seed ^ splitmix64(
                                (static_cast<std::uint64_t>(level) << 56) ^ node)));
        std::shuffle(order.begin(), order.end(), rng);
        break;
      }
    }
  }
};

struct AlphaBeta {
  const Tree& tree;
  const SyntheticTree& spec;
  SyntheticResult result;
  std::vector<std::vector<int>> order_buffers;

  AlphaBeta(const Tree& t, const SyntheticTree& s) : tree(t), spec(s) {
    order_buffers.resize(static_cast<std::size_t>(t.n));
  }

  long long visit(int level, std::uint64_t node, long long alpha, long long beta) {
    ++result.node_count;
    if (level == tree.n) {
      ++result.leaf_count;
      return tree.leaves[node];
    }

    auto& order = order_buffers[static_cast<std::size_t>(level)];
    tree.child_order(spec, level, node, order);

    long long best = std::numeric_limits<long long>::min();
    long long a = alpha;
    for (int j : order) {
      std::uint64_t child = node * static_cast<std::uint64_t>(tree.b) +
                            static_cast<std::uint64_t>(j);
      long long v = -visit(level + 1, child, -beta, -a);
      best = std::max(best, v);
      a = std::max(a, v);
      if (a >= beta) break;
    }
    return best;
  }
};

}  // namespace

SyntheticResult synthetic_alphabeta(const SyntheticTree& t) {
  Tree tree(t);
  AlphaBeta ab(tree, t);
  constexpr long long kInf = std::numeric_limits<long long>::max() / 2;
  ab.result.value = ab.visit(0, 0, -kInf, kInf);
  return ab.result;
}

long long brute_minimax(const SyntheticTree& t) {
  Tree tree(t);
  return tree.values[0][0];
}

std::uint64_t knuth_best_case(std::uint64_t b, std::uint64_t n) {
  if (b < 2 || n < 1) throw std::invalid_argument("knuth_best_case needs b >= 2, n >= 1");
  std::uint64_t low = checked_pow(b, n / 2);
  std::uint64_t high = checked_pow(b, (n + 1) / 2);
  if (low > std::numeric_limits<std::uint64_t>::max() - high) {
    throw std::overflow_error("leaf count overflows 64 bits");
  }
  return low + high - 1;
}

}  // namespace entroply::search
