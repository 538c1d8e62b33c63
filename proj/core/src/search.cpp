#include "entroply/search.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace entroply::search {

namespace {

using chess::Child;
using chess::Move;
using chess::Position;

constexpr int kCheckOrderBonus = 10000;

int order_score(const Child& c) {
  return c.eval_delta + (c.gives_check ? kCheckOrderBonus : 0);
}

// Sorts indices rather than the children themselves; Child carries a full
// Position and is expensive to shuffle.
void sorted_order(const std::vector<Child>& children, std::vector<int>& order) {
  order.resize(children.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[static_cast<std::size_t>(i)] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return order_score(children[static_cast<std::size_t>(a)]) >
           order_score(children[static_cast<std::size_t>(b)]);
  });
}

class Searcher {
 public:
  explicit Searcher(const SearchParams& params, int entry_depth = 0) : params_(params) {
    // Depth never exceeds max_extension (the guard fires before any child
    // is entered), so the buffer vectors are never resized mid-search.
    std::size_t levels = static_cast<std::size_t>(std::max(params.max_extension, entry_depth)) + 1;
    buffers_.resize(levels);
    pv_buffers_.resize(levels + 1);
    order_buffers_.resize(levels);
  }

  int node(const Position& pos, int alpha, int beta, int real_depth, double virtual_depth,
           double path_rp, std::vector<Move>* pv) {
    assert(alpha < beta);
    ++stats_.nodes;
    stats_.max_depth_attained = std::max(stats_.max_depth_attained, real_depth);
    if (stats_.nodes > params_.node_budget) {
      stats_.aborted = true;
      stopped_ = true;
      return chess::material_eval(pos);
    }

    auto& children = buffers_[static_cast<std::size_t>(real_depth)];
    chess::expand_children(pos, children);

    if (children.empty()) {
      // Mate outranks the depth guard: a mate sitting on the horizon counts.
      if (chess::in_check(pos, pos.side_to_move)) {
        return -(params_.mate_score - real_depth);
      }
      return 0;
    }

    const bool rp_policy = params_.policy.kind == policy::PolicyKind::RealizationProbability;
    if (virtual_depth >= params_.max_virtual_depth || real_depth >= params_.max_extension ||
        (rp_policy && real_depth > 0 && !policy::rp_should_expand(path_rp, params_.policy.rp_threshold))) {
      return chess::material_eval(pos);
    }

    auto& order = order_buffers_[static_cast<std::size_t>(real_depth)];
    sorted_order(children, order);

    int best = std::numeric_limits<int>::min();
    int a = alpha;
    std::vector<Move>& child_pv = pv_buffers_[static_cast<std::size_t>(real_depth)];
    for (int child_index : order) {
      const Child& child = children[static_cast<std::size_t>(child_index)];
      chess::MoveCategory category = chess::categorize(
          child.move, child.gives_check,
          child.move.is_capture ? chess::capture_victim(pos, child.move) : chess::PieceKind::Pawn);

      policy::PolicyContext ctx;
      ctx.category = category;
      ctx.eval_delta = order_score(child);
      ctx.path_rp = path_rp;
      double child_rp = path_rp;
      if (rp_policy) {
        child_rp = policy::rp_update(path_rp, params_.policy.table.probability(category));
        ctx.path_rp = child_rp;
      }
      if (params_.policy.kind == policy::PolicyKind::AppendixHeuristic) {
        thread_local std::vector<Move> replies;
        chess::generate_legal_moves(child.position, replies);
        ctx.reply_count = static_cast<int>(replies.size());
      }

      double increment = policy::ply_increment(params_.policy, ctx, params_.step_scale);
      child_pv.clear();
      int value = -node(child.position, -beta, -a, real_depth + 1, virtual_depth + increment,
                        child_rp, pv ? &child_pv : nullptr);
      if (stopped_) break;

      if (value > best) {
        best = value;
        if (value > a) {
          a = value;
          if (pv) {
            pv->clear();
            pv->push_back(child.move);
            pv->insert(pv->end(), child_pv.begin(), child_pv.end());
          }
        }
      }
      if (a >= beta) {
        ++stats_.cutoffs;
        break;
      }
    }
    return best;
  }

  const NodeStats& stats() const { return stats_; }

 private:
  const SearchParams& params_;
  NodeStats stats_;
  bool stopped_ = false;
  std::vector<std::vector<Child>> buffers_;
  std::vector<std::vector<Move>> pv_buffers_;  // one per depth, reused
  std::vector<std::vector<int>> order_buffers_;
};

}  // namespace

int SearchParams::max_uniform_depth() const {
  return static_cast<int>(std::llround(max_virtual_depth / step_scale));
}

SearchParams SearchParams::uniform_depth(int plies, double step) {
  SearchParams params;
  params.policy = policy::DepthPolicy::uniform();
  params.step_scale = step;
  params.max_virtual_depth = plies * step;
  params.max_extension = std::max(32, 2 * plies);
  return params;
}

int fractional_node(const Position& p, int alpha, int beta, int real_depth, double virtual_depth,
                    const SearchParams& params, NodeStats* stats, double path_rp) {
  if (!(alpha < beta)) throw std::invalid_argument("fractional_node needs alpha < beta");
  Searcher searcher(params, real_depth);
  int value = searcher.node(p, alpha, beta, real_depth, virtual_depth, path_rp, nullptr);
  if (stats) *stats = searcher.stats();
  return value;
}

SearchResult search_root(const Position& p, const SearchParams& params) {
  if (chess::game_status(p) != chess::GameStatus::Ongoing) {
    throw std::invalid_argument("search_root requires an ongoing position");
  }

  Searcher searcher(params);
  SearchResult result;
  result.value = searcher.node(p, -params.mate_score, params.mate_score, 0, 0.0, 1.0, &result.pv);
  result.nodes = searcher.stats().nodes;
  result.cutoffs = searcher.stats().cutoffs;
  result.max_depth_attained = searcher.stats().max_depth_attained;
  result.aborted = searcher.stats().aborted;
  if (!result.pv.empty()) result.best_move = result.pv.front();

  // A mate value only counts as solved when the variation replays to mate.
  if (!result.aborted && result.value > 0 && !result.pv.empty()) {
    int plies = params.mate_score - result.value;
    if (plies == static_cast<int>(result.pv.size())) {
      Position cursor = p;
      for (const Move& m : result.pv) cursor = chess::apply_move(cursor, m);
      if (chess::game_status(cursor) == chess::GameStatus::Checkmate) {
        result.solved_mate_in = (plies + 1) / 2;
      }
    }
  }
  return result;
}

std::vector<Move> order_moves(const Position& p, std::vector<Move> moves, int prev_eval) {
  struct Scored {
    Move move;
    int score;
  };
  std::vector<Scored> scored;
  scored.reserve(moves.size());
  for (const Move& m : moves) {
    Position child = chess::apply_move(p, m);
    int child_eval = -chess::material_eval(child);  // mover's perspective
    int score = std::abs(child_eval - prev_eval);
    if (chess::in_check(child, child.side_to_move)) score += kCheckOrderBonus;
    scored.push_back({m, score});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.score > b.score; });
  std::vector<Move> out;
  out.reserve(scored.size());
  for (const Scored& s : scored) out.push_back(s.move);
  return out;
}

}  // namespace entroply::search
