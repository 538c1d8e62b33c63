#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "entroply/chess.hpp"

namespace entroply::entropy {

/// Undirected weighted graph of a piece's single-move reachability on an
/// N×N empty board. Nodes are squares (rank-major). `labels` carries the
/// original node ids after restriction to a component; empty means identity.
struct MobilityGraph {
  struct Edge {
    int a, b;
    double weight;
  };

  int n_nodes = 0;
  std::vector<Edge> edges;
  std::vector<int> labels;

  int label(int node) const { return labels.empty() ? node : labels[node]; }

  /// Total edge weight per node, Σ_k w(i,k).
  std::vector<double> node_weights() const;
  std::vector<std::vector<std::pair<int, double>>> adjacency() const;
};

/// Builds the mobility graph of a non-pawn piece. Pawn moves are not
/// symmetric, so the random-walk model rejects them; callers fall back to
/// the configured pawn rate of an EntropyModel.
MobilityGraph build_mobility_graph(chess::PieceKind kind, int board_size);

/// Connected components, each a sorted list of node ids. Isolated nodes
/// form singleton components.
std::vector<std::vector<int>> components(const MobilityGraph& g);

/// Subgraph induced by `nodes`, renumbered densely; original ids go to labels.
MobilityGraph restrict_to(const MobilityGraph& g, const std::vector<int>& nodes);

struct TransitionMatrix {
  std::vector<std::vector<double>> rows;  // P_ij = w_ij / Σ_k w_ik
};

TransitionMatrix transition_matrix(const MobilityGraph& g);

using Distribution = std::vector<double>;

/// Stationary distribution of the random walk, μ_i proportional to the
/// weight emanating from node i. Throws on disconnected graphs; restrict
/// to one component first.
Distribution stationary_distribution(const MobilityGraph& g);

/// Entropy rate in bits: Σ_i μ_i H(row i). Equals log2(d) on d-regular
/// graphs and never exceeds log2 of the maximum degree.
double entropy_rate(const MobilityGraph& g);

/// Exact finite-board rate. Disconnected graphs (bishops split into two
/// colour classes, which are isomorphic) use the largest component.
double exact_rate(chess::PieceKind kind, int board_size);

/// The idealised edge-effect-free rates: log2 of {8, 14, 14, 28, 8} moves
/// for knight, bishop, rook, queen, king.
double asymptotic_rate(chess::PieceKind kind);

enum class RateMode : std::uint8_t { Asymptotic, ExactFinite };

/// Per-kind entropy rates plus the reference reduction of the best move
/// category. Read-only after construction; safe to share between threads.
struct EntropyModel {
  std::array<double, chess::kNumPieceKinds> rates{};
  double best_gain = 0.0;
  RateMode mode = RateMode::Asymptotic;
  int board_size = 8;

  double rate(chess::PieceKind kind) const { return rates[static_cast<int>(kind)]; }

  static EntropyModel asymptotic(double pawn_rate = default_pawn_rate(),
                                 double best_gain = default_best_gain());
  static EntropyModel exact_finite(int board_size, double pawn_rate = default_pawn_rate(),
                                   double best_gain = default_best_gain());

  // Pawns fall outside the undirected-walk model: forward push plus two
  // capture directions gives the default.
  static double default_pawn_rate() { return std::log2(3.0); }
  static double default_best_gain() { return std::log2(30.0); }
};

/// Sum of the model rates of every piece on the board, in bits.
double position_entropy(const chess::Position& p, const EntropyModel& m);

/// Entropy drop from `before` to `after`: positive for captures, zero for
/// quiet moves. Evaluated from the piece-count difference so that a single
/// capture yields exactly the victim's rate.
double info_gain(const chess::Position& before, const chess::Position& after,
                 const EntropyModel& m);

/// Bits of entropy reduction per node searched.
double heuristic_efficiency(double delta_h_bits, std::uint64_t delta_nodes);

/// Writes `node,degree,mu,row_entropy` rows for a connected graph.
void write_graph_csv(const MobilityGraph& g, std::ostream& out);

}  // namespace entroply::entropy
