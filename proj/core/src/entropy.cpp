#include "entroply/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace entroply::entropy {

namespace {

using chess::PieceKind;

constexpr double kStationaryTolerance = 1e-10;

struct Step {
  int df, dr;
};

constexpr Step kKnightSteps[] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                 {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr Step kKingSteps[] = {{1, 0},  {1, 1},  {0, 1},  {-1, 1},
                               {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
constexpr Step kRookDirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr Step kBishopDirs[] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

void add_leaper_edges(MobilityGraph& g, int n, const Step* steps, int count) {
  for (int rank = 0; rank < n; ++rank) {
    for (int file = 0; file < n; ++file) {
      for (int i = 0; i < count; ++i) {
        int tf = file + steps[i].df;
        int tr = rank + steps[i].dr;
        if (tf < 0 || tf >= n || tr < 0 || tr >= n) continue;
        int a = rank * n + file;
        int b = tr * n + tf;
        if (a < b) g.edges.push_back({a, b, 1.0});
      }
    }
  }
}

void add_slider_edges(MobilityGraph& g, int n, const Step* dirs, int count) {
  for (int rank = 0; rank < n; ++rank) {
    for (int file = 0; file < n; ++file) {
      for (int i = 0; i < count; ++i) {
        int tf = file + dirs[i].df;
        int tr = rank + dirs[i].dr;
        while (tf >= 0 && tf < n && tr >= 0 && tr < n) {
          int a = rank * n + file;
          int b = tr * n + tf;
          if (a < b) g.edges.push_back({a, b, 1.0});
          tf += dirs[i].df;
          tr += dirs[i].dr;
        }
      }
    }
  }
}

double row_entropy_bits(const std::vector<double>& row) {
  double h = 0.0;
  for (double p : row) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

std::vector<double> MobilityGraph::node_weights() const {
  std::vector<double> w(static_cast<std::size_t>(n_nodes), 0.0);
  for (const auto& e : edges) {
    w[static_cast<std::size_t>(e.a)] += e.weight;
    w[static_cast<std::size_t>(e.b)] += e.weight;
  }
  return w;
}

std::vector<std::vector<std::pair<int, double>>> MobilityGraph::adjacency() const {
  std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(n_nodes));
  for (const auto& e : edges) {
    adj[static_cast<std::size_t>(e.a)].emplace_back(e.b, e.weight);
    adj[static_cast<std::size_t>(e.b)].emplace_back(e.a, e.weight);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

MobilityGraph build_mobility_graph(chess::PieceKind kind, int board_size) {
  if (board_size < 3) {
    throw std::invalid_argument("mobility graph needs board size >= 3");
  }
  if (kind == PieceKind::Pawn) {
    throw std::invalid_argument(
        "pawn moves are not symmetric (no undirected mobility graph); "
        "use the model's configured pawn rate");
  }

  MobilityGraph g;
  g.n_nodes = board_size * board_size;
  switch (kind) {
    case PieceKind::Knight:
      add_leaper_edges(g, board_size, kKnightSteps, 8);
      break;
    case PieceKind::King:
      add_leaper_edges(g, board_size, kKingSteps, 8);
      break;
    case PieceKind::Rook:
      add_slider_edges(g, board_size, kRookDirs, 4);
      break;
    case PieceKind::Bishop:
      add_slider_edges(g, board_size, kBishopDirs, 4);
      break;
    case PieceKind::Queen:
      add_slider_edges(g, board_size, kRookDirs, 4);
      add_slider_edges(g, board_size, kBishopDirs, 4);
      break;
    case PieceKind::Pawn:
      break;  // unreachable
  }
  return g;
}

std::vector<std::vector<int>> components(const MobilityGraph& g) {
  auto adj = g.adjacency();
  std::vector<int> component_of(static_cast<std::size_t>(g.n_nodes), -1);
  std::vector<std::vector<int>> result;
  std::vector<int> stack;

  for (int start = 0; start < g.n_nodes; ++start) {
    if (component_of[static_cast<std::size_t>(start)] != -1) continue;
    int id = static_cast<int>(result.size());
    result.emplace_back();
    stack.push_back(start);
    component_of[static_cast<std::size_t>(start)] = id;
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      result[static_cast<std::size_t>(id)].push_back(node);
      for (const auto& [next, weight] : adj[static_cast<std::size_t>(node)])
        if (component_of[static_cast<std::size_t>(next)] == -1) {
          component_of[static_cast<std::size_t>(next)] = id;
          stack.push_back(next);
        }
    }
    std::sort(result.back().begin(), result.back().end());
  }
  return result;
}

MobilityGraph restrict_to(const MobilityGraph& g, const std::vector<int>& nodes) {
  std::vector<int> dense(static_cast<std::size_t>(g.n_nodes), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    dense[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
  }
  MobilityGraph out;
  out.n_nodes = static_cast<int>(nodes.size());
  out.labels.reserve(nodes.size());
  for (int node : nodes) out.labels.push_back(g.label(node));
  for (const auto& e : g.edges) {
    int a = dense[static_cast<std::size_t>(e.a)];
    int b = dense[static_cast<std::size_t>(e.b)];
    if (a >= 0 && b >= 0) out.edges.push_back({a, b, e.weight});
  }
  return out;
}

TransitionMatrix transition_matrix(const MobilityGraph& g) {
  auto adj = g.adjacency();
  TransitionMatrix m;
  m.rows.assign(static_cast<std::size_t>(g.n_nodes),
                std::vector<double>(static_cast<std::size_t>(g.n_nodes), 0.0));
  for (int i = 0; i < g.n_nodes; ++i) {
    double total = 0.0;
    for (const auto& [j, w] : adj[static_cast<std::size_t>(i)]) total += w;
    if (total <= 0.0) continue;
    for (const auto& [j, w] : adj[static_cast<std::size_t>(i)]) {
      m.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w / total;
    }
  }
  return m;
}

Distribution stationary_distribution(const MobilityGraph& g) {
  auto comps = components(g);
  if (comps.size() != 1) {
    std::string sizes;
    for (const auto& c : comps) {
      if (!sizes.empty()) sizes += ", ";
      sizes += std::to_string(c.size());
    }
    throw std::invalid_argument("graph is disconnected (" + std::to_string(comps.size()) +
                                " components of sizes " + sizes +
                                "); restrict to one component first");
  }

  auto weights = g.node_weights();
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= 0.0) throw std::invalid_argument("graph has no edges");

  Distribution mu(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) mu[i] = weights[i] / total;

  // The degree-proportional distribution must be a fixed point of P.
  auto adj = g.adjacency();
  for (int i = 0; i < g.n_nodes; ++i) {
    double acc = 0.0;
    for (const auto& [j, w] : adj[static_cast<std::size_t>(i)]) {
      acc += mu[static_cast<std::size_t>(j)] * (w / weights[static_cast<std::size_t>(j)]);
    }
    if (std::fabs(acc - mu[static_cast<std::size_t>(i)]) > kStationaryTolerance) {
      throw std::logic_error("stationary distribution failed muP = mu check");
    }
  }
  return mu;
}

double entropy_rate(const MobilityGraph& g) {
  Distribution mu = stationary_distribution(g);
  auto adj = g.adjacency();
  auto weights = g.node_weights();

  double rate = 0.0;
  std::vector<double> row;
  for (int i = 0; i < g.n_nodes; ++i) {
    row.clear();
    for (const auto& [j, w] : adj[static_cast<std::size_t>(i)]) {
      row.push_back(w / weights[static_cast<std::size_t>(i)]);
    }
    rate += mu[static_cast<std::size_t>(i)] * row_entropy_bits(row);
  }
  return rate;
}

double exact_rate(chess::PieceKind kind, int board_size) {
  MobilityGraph g = build_mobility_graph(kind, board_size);
  auto comps = components(g);
  if (comps.size() == 1) return entropy_rate(g);
  auto largest = std::max_element(comps.begin(), comps.end(),
                                  [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return entropy_rate(restrict_to(g, *largest));
}

double asymptotic_rate(chess::PieceKind kind) {
  switch (kind) {
    case PieceKind::Knight: return std::log2(8.0);
    case PieceKind::Bishop: return std::log2(14.0);
    case PieceKind::Rook: return std::log2(14.0);
    case PieceKind::Queen: return std::log2(28.0);
    case PieceKind::King: return std::log2(8.0);
    case PieceKind::Pawn:
      break;
  }
  throw std::invalid_argument("pawns have no asymptotic rate; use the configured default");
}

namespace {

EntropyModel finish_model(EntropyModel m, double pawn_rate, double best_gain) {
  m.rates[static_cast<int>(PieceKind::Pawn)] = pawn_rate;
  m.best_gain = best_gain;
  double max_rate = *std::max_element(m.rates.begin(), m.rates.end());
  for (double r : m.rates) {
    if (!(r > 0.0)) throw std::invalid_argument("entropy model rates must be positive");
  }
  if (best_gain < max_rate) {
    throw std::invalid_argument("best_gain must be at least the largest piece rate");
  }
  return m;
}

}  // namespace

EntropyModel EntropyModel::asymptotic(double pawn_rate, double best_gain) {
  EntropyModel m;
  m.mode = RateMode::Asymptotic;
  for (PieceKind kind : {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook,
                         PieceKind::Queen, PieceKind::King}) {
    m.rates[static_cast<int>(kind)] = asymptotic_rate(kind);
  }
  return finish_model(m, pawn_rate, best_gain);
}

EntropyModel EntropyModel::exact_finite(int board_size, double pawn_rate, double best_gain) {
  EntropyModel m;
  m.mode = RateMode::ExactFinite;
  m.board_size = board_size;
  for (PieceKind kind : {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook,
                         PieceKind::Queen, PieceKind::King}) {
    m.rates[static_cast<int>(kind)] = exact_rate(kind, board_size);
  }
  return finish_model(m, pawn_rate, best_gain);
}

namespace {

std::array<int, chess::kNumPieceKinds> piece_counts(const chess::Position& p) {
  std::array<int, chess::kNumPieceKinds> counts{};
  for (int i = 0; i < 64; ++i) {
    auto piece = p.at(chess::Square(i));
    if (piece) ++counts[static_cast<int>(piece->kind)];
  }
  return counts;
}

}  // namespace

double position_entropy(const chess::Position& p, const EntropyModel& m) {
  auto counts = piece_counts(p);
  double total = 0.0;
  for (int k = 0; k < chess::kNumPieceKinds; ++k) {
    total += counts[static_cast<std::size_t>(k)] * m.rates[static_cast<std::size_t>(k)];
  }
  return total;
}

double info_gain(const chess::Position& before, const chess::Position& after,
                 const EntropyModel& m) {
  auto cb = piece_counts(before);
  auto ca = piece_counts(after);
  double gain = 0.0;
  for (int k = 0; k < chess::kNumPieceKinds; ++k) {
    gain += (cb[static_cast<std::size_t>(k)] - ca[static_cast<std::size_t>(k)]) *
            m.rates[static_cast<std::size_t>(k)];
  }
  return gain;
}

double heuristic_efficiency(double delta_h_bits, std::uint64_t delta_nodes) {
  if (delta_nodes == 0) {
    throw std::invalid_argument("heuristic efficiency needs at least one node");
  }
  return delta_h_bits / static_cast<double>(delta_nodes);
}

void write_graph_csv(const MobilityGraph& g, std::ostream& out) {
  Distribution mu = stationary_distribution(g);
  auto adj = g.adjacency();
  auto weights = g.node_weights();

  out << "node,degree,mu,row_entropy\n";
  std::vector<double> row;
  for (int i = 0; i < g.n_nodes; ++i) {
    row.clear();
    for (const auto& [j, w] : adj[static_cast<std::size_t>(i)]) {
      row.push_back(w / weights[static_cast<std::size_t>(i)]);
    }
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "%d,%zu,%.10g,%.10g\n", g.label(i),
                  adj[static_cast<std::size_t>(i)].size(), mu[static_cast<std::size_t>(i)],
                  row_entropy_bits(row));
    out << buffer;
  }
}

}  // namespace entroply::entropy
