#include "support/oracle.hpp"

#include <algorithm>
#include <cstdlib>

namespace entroply::oracle {

using chess::Color;
using chess::Move;
using chess::Piece;
using chess::PieceKind;
using chess::Position;
using chess::Square;

namespace {

bool inside(int file, int rank) { return 0 <= file && file < 8 && 0 <= rank && rank < 8; }

Square find_king(const Position& p, Color c) {
  for (int i = 0; i < 64; ++i) {
    auto piece = p.at(Square(i));
    if (piece && piece->color == c && piece->kind == PieceKind::King) return Square(i);
  }
  std::abort();
}

// Geometric capture targets of the piece on `from`, one square list per call.
std::vector<Square> capture_targets(const Position& p, Square from) {
  std::vector<Square> targets;
  auto piece = p.at(from);
  if (!piece) return targets;
  const int f = from.file(), r = from.rank();

  auto walk = [&](int df, int dr, bool sliding) {
    int tf = f + df, tr = r + dr;
    while (inside(tf, tr)) {
      targets.push_back(Square(tf, tr));
      if (!sliding || p.at(Square(tf, tr))) break;
      tf += df;
      tr += dr;
    }
  };

  switch (piece->kind) {
    case PieceKind::Pawn: {
      int dr = piece->color == Color::White ? 1 : -1;
      if (inside(f - 1, r + dr)) targets.push_back(Square(f - 1, r + dr));
      if (inside(f + 1, r + dr)) targets.push_back(Square(f + 1, r + dr));
      break;
    }
    case PieceKind::Knight:
      for (auto [df, dr] : {std::pair{1, 2}, {2, 1}, {2, -1}, {1, -2},
                            {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}}) {
        if (inside(f + df, r + dr)) targets.push_back(Square(f + df, r + dr));
      }
      break;
    case PieceKind::King:
      for (int df = -1; df <= 1; ++df)
        for (int dr = -1; dr <= 1; ++dr) {
          if ((df || dr) && inside(f + df, r + dr)) targets.push_back(Square(f + df, r + dr));
        }
      break;
    case PieceKind::Bishop:
      for (auto [df, dr] : {std::pair{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) walk(df, dr, true);
      break;
    case PieceKind::Rook:
      for (auto [df, dr] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) walk(df, dr, true);
      break;
    case PieceKind::Queen:
      for (auto [df, dr] : {std::pair{1, 1}, {1, -1}, {-1, 1}, {-1, -1},
                            {1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        walk(df, dr, true);
      }
      break;
  }
  return targets;
}

}  // namespace

bool naive_attacked(const Position& p, Square sq, Color by) {
  for (int i = 0; i < 64; ++i) {
    auto piece = p.at(Square(i));
    if (!piece || piece->color != by) continue;
    auto targets = capture_targets(p, Square(i));
    if (std::find(targets.begin(), targets.end(), sq) != targets.end()) return true;
  }
  return false;
}

Position naive_apply(const Position& p, const Move& m) {
  Position q = p;
  Piece mover = *p.at(m.from);

  if (m.is_en_passant) q.set(Square(m.to.file(), m.from.rank()), std::nullopt);
  q.set(m.from, std::nullopt);
  Piece placed = mover;
  if (m.promotion) placed.kind = *m.promotion;
  q.set(m.to, placed);

  if (m.is_castle) {
    int rank = m.from.rank();
    bool kingside = m.to.file() == 6;
    q.set(Square(kingside ? 7 : 0, rank), std::nullopt);
    q.set(Square(kingside ? 5 : 3, rank), Piece{mover.color, PieceKind::Rook});
  }

  auto drop_right = [&](Square sq, std::uint8_t bit) {
    if (m.from == sq || m.to == sq) q.castling &= static_cast<std::uint8_t>(~bit);
  };
  drop_right(Square(4, 0), chess::kWhiteKingside | chess::kWhiteQueenside);
  drop_right(Square(7, 0), chess::kWhiteKingside);
  drop_right(Square(0, 0), chess::kWhiteQueenside);
  drop_right(Square(4, 7), chess::kBlackKingside | chess::kBlackQueenside);
  drop_right(Square(7, 7), chess::kBlackKingside);
  drop_right(Square(0, 7), chess::kBlackQueenside);

  q.en_passant.reset();
  if (mover.kind == PieceKind::Pawn && std::abs(m.to.rank() - m.from.rank()) == 2) {
    q.en_passant = Square(m.from.file(), (m.from.rank() + m.to.rank()) / 2);
  }

  if (mover.kind == PieceKind::Pawn || m.is_capture) {
    q.halfmove_clock = 0;
  } else {
    ++q.halfmove_clock;
  }
  if (mover.color == Color::Black) ++q.fullmove_number;
  q.side_to_move = chess::opposite(mover.color);
  return q;
}

std::vector<Move> naive_legal_moves(const Position& p) {
  const Color us = p.side_to_move;
  const Color them = chess::opposite(us);
  std::vector<Move> pseudo;

  for (int i = 0; i < 64; ++i) {
    Square from(i);
    auto piece = p.at(from);
    if (!piece || piece->color != us) continue;

    if (piece->kind == PieceKind::Pawn) {
      int dr = us == Color::White ? 1 : -1;
      int promo_rank = us == Color::White ? 7 : 0;
      auto add_pawn = [&](Square to, bool capture, bool ep) {
        if (to.rank() == promo_rank) {
          for (PieceKind k :
               {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen}) {
            pseudo.push_back(Move{from, to, k, capture, ep, false});
          }
        } else {
          pseudo.push_back(Move{from, to, std::nullopt, capture, ep, false});
        }
      };
      Square one(from.file(), from.rank() + dr);
      if (!p.at(one)) {
        add_pawn(one, false, false);
        bool home = from.rank() == (us == Color::White ? 1 : 6);
        Square two(from.file(), from.rank() + 2 * dr);
        if (home && !p.at(two)) add_pawn(two, false, false);
      }
      for (Square to : capture_targets(p, from)) {
        auto target = p.at(to);
        if (target && target->color == them) add_pawn(to, true, false);
        if (!target && p.en_passant && to == *p.en_passant) add_pawn(to, true, true);
      }
    } else {
      for (Square to : capture_targets(p, from)) {
        auto target = p.at(to);
        if (target && target->color == us) continue;
        pseudo.push_back(Move{from, to, std::nullopt, target.has_value(), false, false});
      }
      if (piece->kind == PieceKind::King && from == Square(4, us == Color::White ? 0 : 7) &&
          !naive_attacked(p, from, them)) {
        int rank = from.rank();
        std::uint8_t ks = us == Color::White ? chess::kWhiteKingside : chess::kBlackKingside;
        std::uint8_t qs = us == Color::White ? chess::kWhiteQueenside : chess::kBlackQueenside;
        if ((p.castling & ks) && !p.at(Square(5, rank)) && !p.at(Square(6, rank)) &&
            !naive_attacked(p, Square(5, rank), them) &&
            !naive_attacked(p, Square(6, rank), them)) {
          pseudo.push_back(Move{from, Square(6, rank), std::nullopt, false, false, true});
        }
        if ((p.castling & qs) && !p.at(Square(3, rank)) && !p.at(Square(2, rank)) &&
            !p.at(Square(1, rank)) && !naive_attacked(p, Square(3, rank), them) &&
            !naive_attacked(p, Square(2, rank), them)) {
          pseudo.push_back(Move{from, Square(2, rank), std::nullopt, false, false, true});
        }
      }
    }
  }

  std::vector<Move> legal;
  for (const Move& m : pseudo) {
    Position child = naive_apply(p, m);
    if (!naive_attacked(child, find_king(child, us), them)) legal.push_back(m);
  }
  std::sort(legal.begin(), legal.end(), [](const Move& a, const Move& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    int pa = a.promotion ? static_cast<int>(*a.promotion) : -1;
    int pb = b.promotion ? static_cast<int>(*b.promotion) : -1;
    return pa < pb;
  });
  return legal;
}

std::uint64_t naive_perft(const Position& p, int depth) {
  if (depth == 0) return 1;
  std::uint64_t total = 0;
  for (const Move& m : naive_legal_moves(p)) {
    total += naive_perft(naive_apply(p, m), depth - 1);
  }
  return total;
}

}  // namespace entroply::oracle
