#include <stdexcept>
#include <utility>

#include "doctest.h"
#include "entroply/synthetic.hpp"

using namespace entroply;
using search::Ordering;
using search::SyntheticTree;

TEST_SUITE_BEGIN("synthetic");

TEST_CASE("knuth best case formula") {
  CHECK(search::knuth_best_case(2, 2) == 3);
  CHECK(search::knuth_best_case(3, 4) == 17);
  CHECK(search::knuth_best_case(4, 6) == 127);
  CHECK(search::knuth_best_case(5, 6) == 249);
  CHECK(search::knuth_best_case(2, 1) == 2);
  CHECK_THROWS_AS(search::knuth_best_case(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(search::knuth_best_case(10, 40), std::overflow_error);
}

TEST_CASE("perfect ordering hits the best-case leaf count exactly") {
  for (auto [b, n] : {std::pair{2, 2}, {2, 5}, {3, 3}, {3, 4}, {4, 5}, {5, 4}}) {
    for (std::uint64_t seed : {0ULL, 1ULL, 42ULL}) {
      SyntheticTree t{b, n, seed, Ordering::Perfect, 0};
      auto result = search::synthetic_alphabeta(t);
      CAPTURE(b);
      CAPTURE(n);
      CAPTURE(seed);
      CHECK(result.leaf_count == search::knuth_best_case(std::uint64_t(b), std::uint64_t(n)));
      CHECK(result.value == search::brute_minimax(t));
    }
  }
}

TEST_CASE("worst ordering evaluates every leaf") {
  for (auto [b, n] : {std::pair{2, 2}, {2, 6}, {3, 4}, {4, 4}}) {
    for (std::uint64_t seed : {0ULL, 7ULL}) {
      SyntheticTree t{b, n, seed, Ordering::Worst, 0};
      auto result = search::synthetic_alphabeta(t);
      std::uint64_t full = 1;
      for (int i = 0; i < n; ++i) full *= std::uint64_t(b);
      CHECK(result.leaf_count == full);
      CHECK(result.value == search::brute_minimax(t));
    }
  }
}

TEST_CASE("random ordering stays between best case and full tree") {
  for (std::uint64_t order_seed = 0; order_seed < 8; ++order_seed) {
    SyntheticTree t{3, 5, 11, Ordering::Random, order_seed};
    auto result = search::synthetic_alphabeta(t);
    CHECK(result.leaf_count >= search::knuth_best_case(3, 5));
    CHECK(result.leaf_count <= 243);
    CHECK(result.value == search::brute_minimax(t));
  }
}

TEST_CASE("value is independent of visit order on a fixed tree") {
  for (std::uint64_t seed : {3ULL, 9ULL, 27ULL}) {
    SyntheticTree perfect{4, 4, seed, Ordering::Perfect, 0};
    long long reference = search::brute_minimax(perfect);
    CHECK(search::synthetic_alphabeta(perfect).value == reference);
    for (std::uint64_t order_seed = 0; order_seed < 4; ++order_seed) {
      SyntheticTree random{4, 4, seed, Ordering::Random, order_seed};
      CHECK(search::synthetic_alphabeta(random).value == reference);
    }
  }
}

TEST_CASE("size guard rejects unenumerable trees") {
  SyntheticTree t{10, 8, 0, Ordering::Perfect, 0};  // 10^8 leaves
  CHECK_THROWS_AS(search::brute_minimax(t), std::invalid_argument);
}

TEST_SUITE_END();
