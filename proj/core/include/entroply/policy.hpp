#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "entroply/chess.hpp"
#include "entroply/entropy.hpp"

namespace entroply::policy {

/// Fraction of a full ply charged for a move of the given category:
/// 1 minus the category's entropy reduction relative to the best gain.
/// Checks cost nothing, quiet moves a full ply.
double ers_fraction(const chess::MoveCategory& category, const entropy::EntropyModel& m);

/// Fractional ply from a category probability: log(p_c) / log(1/c).
double winands_fraction(double p_c, double c);

/// Realization probability of a child node, parent probability times the
/// move's transition probability. Combined in log space.
double rp_update(double parent_rp, double p_m);

/// Strictly-greater expansion gate.
bool rp_should_expand(double rp, double threshold);

/// Interestingness of a terminal node: sum of log2 of the per-move
/// probabilities along the path. Always <= 0.
double selective_extension_score(std::span<const double> path_probs);

/// Virtual-depth increment of the reference search procedure:
/// 6 - (log10(|0.1 + delta/100|) + 5/ln(replies + 2)) / divisor, floored
/// at zero. Deltas above 2000 signal a checking move (its ordering bonus)
/// and add no depth.
double appendix_increment(double eval_delta, int reply_count, double divisor);

/// Per-category transition probabilities for the table-driven policies.
struct CategoryTable {
  double quiet = 0.0;
  double check = 0.0;
  double check_capture = 0.0;
  double promotion = 0.0;
  std::array<double, chess::kNumPieceKinds> capture{};

  double probability(const chess::MoveCategory& category) const;

  /// Derives probabilities from entropy reductions: p = 2^reduction / c,
  /// capped at 1. With the default model and c = 30 the check row is 1 and
  /// a quiet move gets exactly 1/c.
  static CategoryTable from_model(const entropy::EntropyModel& m, double c);
};

enum class PolicyKind : std::uint8_t {
  Uniform,
  EntropyReduction,
  WinandsTable,
  RealizationProbability,
  AppendixHeuristic,
};

/// Strategy selecting the virtual-depth increment per move. Immutable
/// after construction. `divisor` scales down the reduction granted to
/// informative moves; 1 applies the policy verbatim and larger values
/// drive every variant toward uniform stepping.
struct DepthPolicy {
  PolicyKind kind = PolicyKind::Uniform;
  double divisor = 1.0;
  entropy::EntropyModel model = entropy::EntropyModel::asymptotic();
  CategoryTable table;
  double winands_c = 30.0;
  double rp_threshold = 1e-6;

  static DepthPolicy uniform();
  static DepthPolicy entropy_reduction(entropy::EntropyModel model, double divisor = 1.0);
  static DepthPolicy winands(CategoryTable table, double c, double divisor = 1.0);
  static DepthPolicy realization(CategoryTable table, double threshold);
  static DepthPolicy appendix(double divisor = 1.0);

  std::string_view name() const;
  DepthPolicy with_divisor(double d) const;
};

/// Facts about one searched move that the policies consume.
struct PolicyContext {
  chess::MoveCategory category;
  double eval_delta = 0.0;  // ordering score: material swing plus check bonus
  int reply_count = 0;      // legal moves in the child position
  double path_rp = 1.0;
};

/// Virtual-depth increment, always >= 0. Uniform and realization-probability
/// policies step by `step_scale`; the entropy and Winands policies scale it
/// by their fraction; the appendix heuristic uses its own formula.
double ply_increment(const DepthPolicy& policy, const PolicyContext& ctx, double step_scale);

}  // namespace entroply::policy
