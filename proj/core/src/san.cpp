#include <cassert>
#include <string>

#include "entroply/chess.hpp"

namespace entroply::chess {

namespace {

constexpr char kKindLetter[] = {'P', 'N', 'B', 'R', 'Q', 'K'};

std::string_view strip_suffixes(std::string_view san) {
  while (!san.empty() && (san.back() == '+' || san.back() == '#' || san.back() == '!' ||
                          san.back() == '?')) {
    san.remove_suffix(1);
  }
  return san;
}

}  // namespace

std::string to_san(const Position& p, const Move& m) {
  auto mover = p.at(m.from);
  assert(mover && "to_san: no piece on from-square");

  std::string san;
  if (m.is_castle) {
    san = m.to.file() == 6 ? "O-O" : "O-O-O";
  } else if (mover->kind == PieceKind::Pawn) {
    if (m.is_capture) {
      san += static_cast<char>('a' + m.from.file());
      san += 'x';
    }
    san += square_name(m.to);
    if (m.promotion) {
      san += '=';
      san += kKindLetter[static_cast<int>(*m.promotion)];
    }
  } else {
    san += kKindLetter[static_cast<int>(mover->kind)];

    // Disambiguate against other legal moves of the same kind to the
    // same square: file first, then rank, then both.
    bool ambiguous = false, same_file = false, same_rank = false;
    for (const Move& other : generate_legal_moves(p)) {
      if (other.from == m.from || other.to != m.to) continue;
      auto piece = p.at(other.from);
      if (!piece || piece->kind != mover->kind) continue;
      ambiguous = true;
      if (other.from.file() == m.from.file()) same_file = true;
      if (other.from.rank() == m.from.rank()) same_rank = true;
    }
    if (ambiguous) {
      if (!same_file) {
        san += static_cast<char>('a' + m.from.file());
      } else if (!same_rank) {
        san += static_cast<char>('1' + m.from.rank());
      } else {
        san += square_name(m.from);
      }
    }

    if (m.is_capture) san += 'x';
    san += square_name(m.to);
  }

  Position child = apply_move(p, m);
  if (in_check(child, child.side_to_move)) {
    san += game_status(child) == GameStatus::Checkmate ? '#' : '+';
  }
  return san;
}

std::optional<Move> find_move_by_san(const Position& p, std::string_view san) {
  std::string_view wanted = strip_suffixes(san);
  if (wanted.empty()) return std::nullopt;
  for (const Move& m : generate_legal_moves(p)) {
    std::string candidate = to_san(p, m);
    if (strip_suffixes(candidate) == wanted) return m;
  }
  return std::nullopt;
}

}  // namespace entroply::chess
