#include "support/generators.hpp"

namespace entroply::testing {

using chess::Move;
using chess::Position;

Position random_playout(std::mt19937_64& rng, int plies) {
  Position p = chess::start_position();
  std::vector<Move> moves;
  for (int i = 0; i < plies; ++i) {
    chess::generate_legal_moves(p, moves);
    if (moves.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    p = chess::apply_move(p, moves[pick(rng)]);
  }
  return p;
}

std::vector<Position> random_positions(int count, int min_plies, int max_plies,
                                       std::uint64_t seed, bool ongoing_only) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(min_plies, max_plies);
  std::vector<Position> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    Position p = random_playout(rng, length(rng));
    if (ongoing_only && chess::game_status(p) != chess::GameStatus::Ongoing) continue;
    out.push_back(std::move(p));
  }
  return out;
}

const std::vector<PerftFixture>& perft_fixtures() {
  static const std::vector<PerftFixture> fixtures = {
      {"rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1", 3, 8902},
      {"rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1", 4, 197281},
      {"r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", 1, 48},
      {"r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", 2, 2039},
      {"r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", 3, 97862},
      {"8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", 3, 2812},
      {"8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", 4, 43238},
      {"r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1", 3, 9467},
      {"rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8", 3, 62379},
      {"r4rk1/1pp1qppp/p1np1n2/2b1p1B1/2B1P1b1/P1NP1N2/1PP1QPPP/R4RK1 w - - 0 10", 3, 89890},
  };
  return fixtures;
}

const std::vector<const char*>& mixed_corpus() {
  static const std::vector<const char*> corpus = {
      // Standard stress positions: castling, promotions, pins, en passant.
      "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1",
      "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
      "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
      "r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1",
      "r2q1rk1/pP1p2pp/Q4n2/bbp1p3/Np6/1B3NBn/pPPP1PPP/R3K2R b KQ - 0 1",
      "rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8",
      "r4rk1/1pp1qppp/p1np1n2/2b1p1B1/2B1P1b1/P1NP1N2/1PP1QPPP/R4RK1 w - - 0 10",
      // En-passant pins and discovered checks.
      "8/8/8/2k5/2pP4/8/B7/4K3 b - d3 0 1",
      "8/8/3p4/KPp4r/5p1k/8/4P1P1/1R6 w - c6 0 1",
      "8/5k2/8/2Pp4/2B5/1K6/8/8 w - d6 0 1",
      // Checks, double checks, mates nearby.
      "rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 1 3",
      "r1bqkbnr/pppp1ppp/2n5/4p3/2B1P3/5Q2/PPPP1PPP/RNB1K1NR w KQkq - 4 4",
      "4k3/8/8/8/8/8/4R3/4K3 b - - 0 1",
      "8/8/8/8/8/5k2/8/4K2R b - - 0 1",
      // Sparse endgames.
      "8/8/8/8/8/8/8/K6k w - - 0 1",
      "7k/5Q2/6K1/8/8/8/8/8 b - - 0 1",
      "8/P7/8/8/8/8/7p/K6k w - - 0 1",
      "4k3/8/8/8/8/8/PPPPPPPP/4K3 w - - 0 1",
      // Heavier middlegames.
      "r2q1rk1/2p1bppp/p2p1n2/1p2P3/4P1b1/1nP1BN2/PP3PPP/RN1QR1K1 b - - 0 1",
      "2kr3r/pp1q1ppp/5n2/1Nb5/2Pp1B2/7Q/P4PPP/1R3RK1 w - - 0 1",
  };
  return corpus;
}

}  // namespace entroply::testing
