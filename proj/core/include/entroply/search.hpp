#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "entroply/chess.hpp"
#include "entroply/policy.hpp"

namespace entroply::search {

struct SearchParams {
  policy::DepthPolicy policy;
  double max_virtual_depth = 4 * 6.0;  // budget in virtual units
  int max_extension = 32;              // hard cap on real plies
  double step_scale = 6.0;
  int mate_score = 100000;
  std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();

  /// Budget expressed as uniform plies: max_virtual_depth / step_scale.
  int max_uniform_depth() const;

  static SearchParams uniform_depth(int plies, double step = 6.0);
};

struct SearchResult {
  int value = 0;  // centipawns, side-to-move perspective
  std::optional<chess::Move> best_move;
  std::vector<chess::Move> pv;
  std::uint64_t nodes = 0;
  int max_depth_attained = 0;  // real plies
  std::optional<int> solved_mate_in;  // full moves of the winning side
  std::uint64_t cutoffs = 0;
  bool aborted = false;  // node budget exhausted
};

/// Full-window fractional-depth negamax from the root. The position must
/// be ongoing. Deterministic: identical inputs give identical results.
SearchResult search_root(const chess::Position& p, const SearchParams& params);

struct NodeStats {
  std::uint64_t nodes = 0;
  std::uint64_t cutoffs = 0;
  int max_depth_attained = 0;
  bool aborted = false;
};

/// The recursive kernel, exposed for direct testing. Fail-soft: the
/// returned value may fall outside (alpha, beta), and when it falls
/// strictly inside it equals the full-window value. `path_rp` feeds the
/// realization-probability gate and starts at 1 for the root.
int fractional_node(const chess::Position& p, int alpha, int beta, int real_depth,
                    double virtual_depth, const SearchParams& params,
                    NodeStats* stats = nullptr, double path_rp = 1.0);

/// Moves sorted by descending |child eval - prev_eval| with a +10000 bonus
/// for checks; ties keep generation order. `prev_eval` and the child evals
/// are taken from the mover's perspective.
std::vector<chess::Move> order_moves(const chess::Position& p, std::vector<chess::Move> moves,
                                     int prev_eval);

}  // namespace entroply::search
