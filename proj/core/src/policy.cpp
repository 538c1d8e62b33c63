#include "entroply/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entroply::policy {

namespace {

using chess::MoveCategory;
using chess::PieceKind;

double category_reduction(const MoveCategory& category, const entropy::EntropyModel& m) {
  switch (category.type) {
    case MoveCategory::Type::Check:
    case MoveCategory::Type::CheckCapture:
      return m.best_gain;
    case MoveCategory::Type::Capture:
      return m.rate(category.victim);
    case MoveCategory::Type::Promotion:
      // No measured reduction exists for promotions; extrapolate as the
      // queen's rate net of the pawn given up.
      return std::max(0.0, m.rate(PieceKind::Queen) - m.rate(PieceKind::Pawn));
    case MoveCategory::Type::Quiet:
      return 0.0;
  }
  return 0.0;
}

}  // namespace

double ers_fraction(const MoveCategory& category, const entropy::EntropyModel& m) {
  double reduction = category_reduction(category, m);
  if (reduction > m.best_gain) {
    throw std::invalid_argument("category entropy reduction exceeds the model's best gain");
  }
  return 1.0 - reduction / m.best_gain;
}

double winands_fraction(double p_c, double c) {
  if (!(p_c > 0.0) || p_c > 1.0) {
    throw std::invalid_argument("category probability must be in (0, 1]");
  }
  if (!(c > 1.0)) throw std::invalid_argument("fractional-ply base must exceed 1");
  return std::log(p_c) / std::log(1.0 / c);
}

double rp_update(double parent_rp, double p_m) {
  if (!(parent_rp > 0.0) || parent_rp > 1.0 || !(p_m > 0.0) || p_m > 1.0) {
    throw std::invalid_argument("realization probabilities must be in (0, 1]");
  }
  return std::exp(std::log(parent_rp) + std::log(p_m));
}

bool rp_should_expand(double rp, double threshold) { return rp > threshold; }

double selective_extension_score(std::span<const double> path_probs) {
  double score = 0.0;
  for (double p : path_probs) {
    if (!(p > 0.0) || p > 1.0) {
      throw std::invalid_argument("path probabilities must be in (0, 1]");
    }
    score += std::log2(p);
  }
  return score;
}

double appendix_increment(double eval_delta, int reply_count, double divisor) {
  if (reply_count < 0) throw std::invalid_argument("reply count must be non-negative");
  if (!(divisor > 0.0)) throw std::invalid_argument("divisor must be positive");
  if (eval_delta > 2000.0) return 0.0;
  double add = std::log10(std::fabs(0.1 + eval_delta / 100.0)) +
               5.0 / std::log(static_cast<double>(reply_count) + 2.0);
  return std::max(0.0, 6.0 - add / divisor);
}

double CategoryTable::probability(const MoveCategory& category) const {
  double p = 0.0;
  switch (category.type) {
    case MoveCategory::Type::Quiet: p = quiet; break;
    case MoveCategory::Type::Check: p = check; break;
    case MoveCategory::Type::CheckCapture: p = check_capture; break;
    case MoveCategory::Type::Promotion: p = promotion; break;
    case MoveCategory::Type::Capture:
      p = capture[static_cast<int>(category.victim)];
      break;
  }
  if (!(p > 0.0)) {
    throw std::invalid_argument("no probability configured for the move category");
  }
  return p;
}

CategoryTable CategoryTable::from_model(const entropy::EntropyModel& m, double c) {
  if (!(c > 1.0)) throw std::invalid_argument("fractional-ply base must exceed 1");
  auto from_reduction = [c](double bits) {
    return std::min(1.0, std::exp2(bits) / c);
  };
  CategoryTable t;
  t.quiet = from_reduction(0.0);
  t.check = from_reduction(std::log2(c));
  t.check_capture = t.check;
  t.promotion = from_reduction(
      std::max(0.0, m.rate(PieceKind::Queen) - m.rate(PieceKind::Pawn)));
  for (int k = 0; k < chess::kNumPieceKinds; ++k) {
    t.capture[static_cast<std::size_t>(k)] = from_reduction(m.rates[static_cast<std::size_t>(k)]);
  }
  t.capture[static_cast<int>(PieceKind::King)] = t.check;  // kings are never captured
  return t;
}

DepthPolicy DepthPolicy::uniform() { return DepthPolicy{}; }

DepthPolicy DepthPolicy::entropy_reduction(entropy::EntropyModel model, double divisor) {
  DepthPolicy p;
  p.kind = PolicyKind::EntropyReduction;
  p.model = model;
  p.divisor = divisor;
  return p;
}

DepthPolicy DepthPolicy::winands(CategoryTable table, double c, double divisor) {
  DepthPolicy p;
  p.kind = PolicyKind::WinandsTable;
  p.table = table;
  p.winands_c = c;
  p.divisor = divisor;
  return p;
}

DepthPolicy DepthPolicy::realization(CategoryTable table, double threshold) {
  if (!(threshold > 0.0) || threshold >= 1.0) {
    throw std::invalid_argument("rp threshold must be in (0, 1)");
  }
  DepthPolicy p;
  p.kind = PolicyKind::RealizationProbability;
  p.table = table;
  p.rp_threshold = threshold;
  return p;
}

DepthPolicy DepthPolicy::appendix(double divisor) {
  if (!(divisor > 0.0)) throw std::invalid_argument("divisor must be positive");
  DepthPolicy p;
  p.kind = PolicyKind::AppendixHeuristic;
  p.divisor = divisor;
  return p;
}

std::string_view DepthPolicy::name() const {
  switch (kind) {
    case PolicyKind::Uniform: return "uniform";
    case PolicyKind::EntropyReduction: return "ers";
    case PolicyKind::WinandsTable: return "winands";
    case PolicyKind::RealizationProbability: return "rp";
    case PolicyKind::AppendixHeuristic: return "appendix";
  }
  return "?";
}

DepthPolicy DepthPolicy::with_divisor(double d) const {
  if (!(d > 0.0)) throw std::invalid_argument("divisor must be positive");
  DepthPolicy p = *this;
  p.divisor = d;
  return p;
}

double ply_increment(const DepthPolicy& policy, const PolicyContext& ctx, double step_scale) {
  if (!(step_scale > 0.0)) throw std::invalid_argument("step scale must be positive");

  double base = step_scale;
  switch (policy.kind) {
    case PolicyKind::Uniform:
    case PolicyKind::RealizationProbability:
      // RP gates expansion through rp_should_expand; depth bookkeeping is flat.
      return step_scale;
    case PolicyKind::EntropyReduction:
      base = step_scale * ers_fraction(ctx.category, policy.model);
      break;
    case PolicyKind::WinandsTable:
      base = step_scale *
             winands_fraction(policy.table.probability(ctx.category), policy.winands_c);
      break;
    case PolicyKind::AppendixHeuristic:
      return appendix_increment(ctx.eval_delta, ctx.reply_count, policy.divisor);
  }

  // The divisor shrinks the reduction below the full step, never the step
  // itself: divisor 1 applies the policy as derived, larger values fade it
  // toward uniform stepping.
  double reduction = step_scale - base;
  return std::max(0.0, step_scale - reduction / policy.divisor);
}

}  // namespace entroply::policy
