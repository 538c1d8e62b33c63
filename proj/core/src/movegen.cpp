#include <algorithm>
#include <cassert>

#include "entroply/chess.hpp"

namespace entroply::chess {

namespace {

struct Offset {
  int df, dr;
};

constexpr Offset kKnightOffsets[] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                     {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr Offset kKingOffsets[] = {{1, 0},  {1, 1},  {0, 1},  {-1, 1},
                                   {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
constexpr Offset kRookDirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
constexpr Offset kBishopDirs[] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

bool on_board(int file, int rank) { return file >= 0 && file < 8 && rank >= 0 && rank < 8; }

// Raw board codes; 0 is empty, bit 3 is the colour, low bits kind + 1.
inline std::int8_t raw(const Position& p, int file, int rank) {
  return p.board[static_cast<std::size_t>(rank * 8 + file)];
}

constexpr std::int8_t code_of(Color c, PieceKind k) {
  return static_cast<std::int8_t>((static_cast<int>(k) + 1) | (c == Color::Black ? 8 : 0));
}

constexpr bool code_is(std::int8_t code, Color c, PieceKind k) { return code == code_of(c, k); }

constexpr bool code_is_color(std::int8_t code, Color c) {
  return code != 0 && ((code & 8) != 0) == (c == Color::Black);
}

constexpr PieceKind code_kind(std::int8_t code) {
  return static_cast<PieceKind>((code & 7) - 1);
}

// Kept in the generation comparator and in generate order: ascending
// from-square, to-square, then promotion kind.
bool move_less(const Move& a, const Move& b) {
  if (a.from != b.from) return a.from < b.from;
  if (a.to != b.to) return a.to < b.to;
  int pa = a.promotion ? static_cast<int>(*a.promotion) : -1;
  int pb = b.promotion ? static_cast<int>(*b.promotion) : -1;
  return pa < pb;
}

void push_pawn_moves(const Position& p, Square from, std::vector<Move>& out) {
  const Color us = p.side_to_move;
  const int dir = us == Color::White ? 1 : -1;
  const int start_rank = us == Color::White ? 1 : 6;
  const int promo_rank = us == Color::White ? 7 : 0;
  const int file = from.file();
  const int rank = from.rank();

  auto push = [&](Square to, bool capture, bool en_passant) {
    Move m{from, to, std::nullopt, capture, en_passant, false};
    if (to.rank() == promo_rank) {
      for (PieceKind k : {PieceKind::Knight, PieceKind::Bishop, PieceKind::Rook, PieceKind::Queen}) {
        m.promotion = k;
        out.push_back(m);
      }
    } else {
      out.push_back(m);
    }
  };

  if (raw(p, file, rank + dir) == 0) {
    push(Square(file, rank + dir), false, false);
    if (rank == start_rank && raw(p, file, rank + 2 * dir) == 0) {
      push(Square(file, rank + 2 * dir), false, false);
    }
  }
  for (int df : {-1, 1}) {
    int tf = file + df;
    int tr = rank + dir;
    if (!on_board(tf, tr)) continue;
    Square to(tf, tr);
    std::int8_t target = raw(p, tf, tr);
    if (target != 0 && !code_is_color(target, us)) {
      push(to, true, false);
    } else if (target == 0 && p.en_passant && to == *p.en_passant) {
      push(to, true, true);
    }
  }
}

void push_leaper_moves(const Position& p, Square from, const Offset* offsets, int count,
                       std::vector<Move>& out) {
  const Color us = p.side_to_move;
  for (int i = 0; i < count; ++i) {
    int tf = from.file() + offsets[i].df;
    int tr = from.rank() + offsets[i].dr;
    if (!on_board(tf, tr)) continue;
    std::int8_t target = raw(p, tf, tr);
    if (code_is_color(target, us)) continue;
    out.push_back(Move{from, Square(tf, tr), std::nullopt, target != 0, false, false});
  }
}

void push_slider_moves(const Position& p, Square from, const Offset* dirs, int count,
                       std::vector<Move>& out) {
  const Color us = p.side_to_move;
  for (int i = 0; i < count; ++i) {
    int tf = from.file() + dirs[i].df;
    int tr = from.rank() + dirs[i].dr;
    while (on_board(tf, tr)) {
      std::int8_t target = raw(p, tf, tr);
      if (target != 0) {
        if (!code_is_color(target, us)) {
          out.push_back(Move{from, Square(tf, tr), std::nullopt, true, false, false});
        }
        break;
      }
      out.push_back(Move{from, Square(tf, tr), std::nullopt, false, false, false});
      tf += dirs[i].df;
      tr += dirs[i].dr;
    }
  }
}

void push_castle_moves(const Position& p, Square from, std::vector<Move>& out) {
  const Color us = p.side_to_move;
  const Color them = opposite(us);
  const int rank = us == Color::White ? 0 : 7;
  if (from != Square(4, rank)) return;
  if (is_attacked(p, from, them)) return;

  const std::uint8_t kingside = us == Color::White ? kWhiteKingside : kBlackKingside;
  const std::uint8_t queenside = us == Color::White ? kWhiteQueenside : kBlackQueenside;

  if ((p.castling & kingside) && raw(p, 5, rank) == 0 && raw(p, 6, rank) == 0 &&
      !is_attacked(p, Square(5, rank), them) && !is_attacked(p, Square(6, rank), them)) {
    out.push_back(Move{from, Square(6, rank), std::nullopt, false, false, true});
  }
  if ((p.castling & queenside) && raw(p, 3, rank) == 0 && raw(p, 2, rank) == 0 &&
      raw(p, 1, rank) == 0 && !is_attacked(p, Square(3, rank), them) &&
      !is_attacked(p, Square(2, rank), them)) {
    out.push_back(Move{from, Square(2, rank), std::nullopt, false, false, true});
  }
}

void generate_pseudo_moves(const Position& p, std::vector<Move>& out) {
  out.clear();
  for (int i = 0; i < 64; ++i) {
    std::int8_t code = p.board[static_cast<std::size_t>(i)];
    if (code == 0 || !code_is_color(code, p.side_to_move)) continue;
    Square from(i);
    switch (code_kind(code)) {
      case PieceKind::Pawn:
        push_pawn_moves(p, from, out);
        break;
      case PieceKind::Knight:
        push_leaper_moves(p, from, kKnightOffsets, 8, out);
        break;
      case PieceKind::Bishop:
        push_slider_moves(p, from, kBishopDirs, 4, out);
        break;
      case PieceKind::Rook:
        push_slider_moves(p, from, kRookDirs, 4, out);
        break;
      case PieceKind::Queen:
        push_slider_moves(p, from, kRookDirs, 4, out);
        push_slider_moves(p, from, kBishopDirs, 4, out);
        break;
      case PieceKind::King:
        push_leaper_moves(p, from, kKingOffsets, 8, out);
        push_castle_moves(p, from, out);
        break;
    }
  }
  // The scan above emits in ascending from-square order already, so the
  // list is nearly sorted and insertion sort beats the libc sort here.
  for (std::size_t i = 1; i < out.size(); ++i) {
    Move m = out[i];
    std::size_t j = i;
    while (j > 0 && move_less(m, out[j - 1])) {
      out[j] = out[j - 1];
      --j;
    }
    out[j] = m;
  }
}

int direction_sign(int d) { return (d > 0) - (d < 0); }

bool aligned(Square a, Square b) {
  int df = a.file() - b.file();
  int dr = a.rank() - b.rank();
  return df == 0 || dr == 0 || df == dr || df == -dr;
}

/// True iff the piece standing on `from` attacks `target` given the
/// current occupancy. `from` must be occupied.
bool piece_attacks(const Position& p, Square from, Square target) {
  const std::int8_t code = p.board[static_cast<std::size_t>(from.index)];
  const int df = target.file() - from.file();
  const int dr = target.rank() - from.rank();
  switch (code_kind(code)) {
    case PieceKind::Pawn: {
      int forward = (code & 8) ? -1 : 1;  // black moves down
      return dr == forward && (df == 1 || df == -1);
    }
    case PieceKind::Knight:
      return (std::abs(df) == 1 && std::abs(dr) == 2) || (std::abs(df) == 2 && std::abs(dr) == 1);
    case PieceKind::King:
      return std::abs(df) <= 1 && std::abs(dr) <= 1 && (df != 0 || dr != 0);
    case PieceKind::Bishop:
      if (std::abs(df) != std::abs(dr)) return false;
      break;
    case PieceKind::Rook:
      if (df != 0 && dr != 0) return false;
      break;
    case PieceKind::Queen:
      if (df != 0 && dr != 0 && std::abs(df) != std::abs(dr)) return false;
      break;
  }
  // Slider ray: clear squares strictly between from and target.
  int sf = direction_sign(df);
  int sr = direction_sign(dr);
  int tf = from.file() + sf;
  int tr = from.rank() + sr;
  while (tf != target.file() || tr != target.rank()) {
    if (raw(p, tf, tr) != 0) return false;
    tf += sf;
    tr += sr;
  }
  return true;
}

/// True iff a slider of colour `by` attacks `target` along the ray that
/// passes through `through` (used for discovered checks and pins after
/// the through-square was vacated).
bool ray_attacks_through(const Position& p, Square target, Square through, Color by) {
  int df = through.file() - target.file();
  int dr = through.rank() - target.rank();
  bool straight = df == 0 || dr == 0;
  bool diagonal = df == dr || df == -dr;
  if ((!straight && !diagonal) || (df == 0 && dr == 0)) return false;
  int sf = direction_sign(df);
  int sr = direction_sign(dr);
  int tf = target.file() + sf;
  int tr = target.rank() + sr;
  while (on_board(tf, tr)) {
    std::int8_t code = raw(p, tf, tr);
    if (code != 0) {
      if (!code_is_color(code, by)) return false;
      PieceKind kind = code_kind(code);
      if (kind == PieceKind::Queen) return true;
      return straight ? kind == PieceKind::Rook : kind == PieceKind::Bishop;
    }
    tf += sf;
    tr += sr;
  }
  return false;
}

thread_local std::vector<Move> t_pseudo_buffer;

}  // namespace

bool is_attacked(const Position& p, Square sq, Color by) {
  const int file = sq.file();
  const int rank = sq.rank();

  // Pawns attack toward their opponent, so look one rank back from `sq`.
  const int pawn_rank = by == Color::White ? rank - 1 : rank + 1;
  if (pawn_rank >= 0 && pawn_rank < 8) {
    for (int df : {-1, 1}) {
      if (file + df >= 0 && file + df < 8 &&
          code_is(raw(p, file + df, pawn_rank), by, PieceKind::Pawn)) {
        return true;
      }
    }
  }

  for (const auto& o : kKnightOffsets) {
    if (on_board(file + o.df, rank + o.dr) &&
        code_is(raw(p, file + o.df, rank + o.dr), by, PieceKind::Knight)) {
      return true;
    }
  }
  for (const auto& o : kKingOffsets) {
    if (on_board(file + o.df, rank + o.dr) &&
        code_is(raw(p, file + o.df, rank + o.dr), by, PieceKind::King)) {
      return true;
    }
  }

  for (const auto& d : kRookDirs) {
    int tf = file + d.df;
    int tr = rank + d.dr;
    while (on_board(tf, tr)) {
      std::int8_t code = raw(p, tf, tr);
      if (code != 0) {
        if (code_is(code, by, PieceKind::Rook) || code_is(code, by, PieceKind::Queen)) return true;
        break;
      }
      tf += d.df;
      tr += d.dr;
    }
  }
  for (const auto& d : kBishopDirs) {
    int tf = file + d.df;
    int tr = rank + d.dr;
    while (on_board(tf, tr)) {
      std::int8_t code = raw(p, tf, tr);
      if (code != 0) {
        if (code_is(code, by, PieceKind::Bishop) || code_is(code, by, PieceKind::Queen))
          return true;
        break;
      }
      tf += d.df;
      tr += d.dr;
    }
  }
  return false;
}

bool in_check(const Position& p, Color c) {
  return is_attacked(p, p.king_square(c), opposite(c));
}

PieceKind capture_victim(const Position& p, const Move& m) {
  assert(m.is_capture);
  if (m.is_en_passant) return PieceKind::Pawn;
  auto piece = p.at(m.to);
  assert(piece && "capture move without a victim");
  return piece->kind;
}

void expand_children(const Position& p, std::vector<Child>& out) {
  out.clear();
  auto& pseudo = t_pseudo_buffer;
  generate_pseudo_moves(p, pseudo);

  const Color us = p.side_to_move;
  const Color them = opposite(us);
  const Square our_king = p.king_square(us);
  const Square their_king = p.king_square(them);
  const bool checked = is_attacked(p, our_king, them);

  for (const Move& m : pseudo) {
    Position child = p;
    apply_move_in_place(child, m);

    // A move can expose its own king only from the king square, from a
    // square aligned with it, by en passant (removes a second pawn), or
    // when already in check.
    if (checked || m.is_en_passant) {
      if (in_check(child, us)) continue;
    } else if (m.from == our_king) {
      if (is_attacked(child, m.to, them)) continue;
    } else if (aligned(m.from, our_king)) {
      if (ray_attacks_through(child, our_king, m.from, them)) continue;
    }

    // Check detection: direct attack from the landing square, discovered
    // attack through the vacated square, or the rare cases (en passant
    // clears a second square, castling moves the rook) via full scan.
    bool gives_check;
    if (m.is_en_passant || m.is_castle) {
      gives_check = is_attacked(child, their_king, us);
    } else {
      gives_check = piece_attacks(child, m.to, their_king) ||
                    (aligned(m.from, their_king) &&
                     ray_attacks_through(child, their_king, m.from, us));
    }

    int delta = 0;
    if (m.is_capture) delta += kMaterialWeight[static_cast<int>(capture_victim(p, m))];
    if (m.promotion) {
      delta += kMaterialWeight[static_cast<int>(*m.promotion)] -
               kMaterialWeight[static_cast<int>(PieceKind::Pawn)];
    }
    out.push_back(Child{m, child, gives_check, delta});
  }
}

void generate_legal_moves(const Position& p, std::vector<Move>& out) {
  thread_local std::vector<Child> children;
  expand_children(p, children);
  out.clear();
  out.reserve(children.size());
  for (const auto& c : children) out.push_back(c.move);
}

std::vector<Move> generate_legal_moves(const Position& p) {
  std::vector<Move> out;
  generate_legal_moves(p, out);
  return out;
}

GameStatus game_status(const Position& p) {
  if (!generate_legal_moves(p).empty()) return GameStatus::Ongoing;
  return in_check(p, p.side_to_move) ? GameStatus::Checkmate : GameStatus::Stalemate;
}

MoveCategory categorize(const Move& m, bool gives_check, PieceKind victim) {
  if (gives_check && m.is_capture) return MoveCategory::check_capture(victim);
  if (gives_check) return MoveCategory::check();
  if (m.is_capture) return MoveCategory::capture(victim);
  if (m.promotion) return MoveCategory::promotion();
  return MoveCategory::quiet();
}

MoveCategory classify_move(const Position& p, const Move& m) {
  Position child = apply_move(p, m);
  bool gives_check = in_check(child, child.side_to_move);
  PieceKind victim = m.is_capture ? capture_victim(p, m) : PieceKind::Pawn;
  return categorize(m, gives_check, victim);
}

std::uint64_t perft(const Position& p, int depth) {
  assert(depth >= 0);
  if (depth == 0) return 1;
  thread_local std::vector<std::vector<Child>> stacks;
  if (stacks.size() < static_cast<std::size_t>(depth)) stacks.resize(depth);

  struct Walker {
    static std::uint64_t walk(const Position& pos, int d, std::vector<std::vector<Child>>& bufs) {
      auto& children = bufs[d - 1];
      expand_children(pos, children);
      if (d == 1) return children.size();
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < children.size(); ++i) {
        total += walk(children[i].position, d - 1, bufs);
      }
      return total;
    }
  };
  return Walker::walk(p, depth, stacks);
}

}  // namespace entroply::chess
