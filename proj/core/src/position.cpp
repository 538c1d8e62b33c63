#include "entroply/chess.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <sstream>

namespace entroply::chess {

namespace {

std::int8_t encode(Piece piece) {
  return static_cast<std::int8_t>((static_cast<int>(piece.kind) + 1) |
                                  (piece.color == Color::Black ? 8 : 0));
}

Piece decode(std::int8_t code) {
  return Piece{(code & 8) ? Color::Black : Color::White,
               static_cast<PieceKind>((code & 7) - 1)};
}

char piece_char(Piece piece) {
  static constexpr char kWhite[] = {'P', 'N', 'B', 'R', 'Q', 'K'};
  char c = kWhite[static_cast<int>(piece.kind)];
  return piece.color == Color::White ? c : static_cast<char>(std::tolower(c));
}

std::optional<Piece> piece_from_char(char c) {
  Color color = std::isupper(static_cast<unsigned char>(c)) ? Color::White : Color::Black;
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'p': return Piece{color, PieceKind::Pawn};
    case 'n': return Piece{color, PieceKind::Knight};
    case 'b': return Piece{color, PieceKind::Bishop};
    case 'r': return Piece{color, PieceKind::Rook};
    case 'q': return Piece{color, PieceKind::Queen};
    case 'k': return Piece{color, PieceKind::King};
    default: return std::nullopt;
  }
}

int parse_count(std::string_view text, std::string_view what, int min_value) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < min_value) {
    throw FenError(FenErrorKind::MalformedField,
                   "bad " + std::string(what) + " field: '" + std::string(text) + "'");
  }
  return value;
}

int count_kind(const Position& p, Color color, PieceKind kind) {
  int n = 0;
  for (int i = 0; i < 64; ++i) {
    auto piece = p.at(Square(i));
    if (piece && piece->color == color && piece->kind == kind) ++n;
  }
  return n;
}

bool has_piece(const Position& p, Square sq, Color color, PieceKind kind) {
  auto piece = p.at(sq);
  return piece && piece->color == color && piece->kind == kind;
}

void validate(const Position& p) {
  for (Color color : {Color::White, Color::Black}) {
    if (count_kind(p, color, PieceKind::King) != 1) {
      throw FenError(FenErrorKind::IllegalPlacement,
                     std::string("expected exactly one ") +
                         (color == Color::White ? "white" : "black") + " king");
    }
  }
  for (int file = 0; file < 8; ++file) {
    for (int rank : {0, 7}) {
      auto piece = p.at(Square(file, rank));
      if (piece && piece->kind == PieceKind::Pawn) {
        throw FenError(FenErrorKind::IllegalPlacement, "pawn on first or last rank");
      }
    }
  }

  struct RightCheck {
    std::uint8_t bit;
    Color color;
    Square king, rook;
  };
  const RightCheck rights[] = {
      {kWhiteKingside, Color::White, Square(4, 0), Square(7, 0)},
      {kWhiteQueenside, Color::White, Square(4, 0), Square(0, 0)},
      {kBlackKingside, Color::Black, Square(4, 7), Square(7, 7)},
      {kBlackQueenside, Color::Black, Square(4, 7), Square(0, 7)},
  };
  for (const auto& r : rights) {
    if (!(p.castling & r.bit)) continue;
    if (!has_piece(p, r.king, r.color, PieceKind::King) ||
        !has_piece(p, r.rook, r.color, PieceKind::Rook)) {
      throw FenError(FenErrorKind::IllegalPlacement,
                     "castling rights inconsistent with king/rook placement");
    }
  }

  if (p.en_passant) {
    Square ep = *p.en_passant;
    const bool white_to_move = p.side_to_move == Color::White;
    if (ep.rank() != (white_to_move ? 5 : 2)) {
      throw FenError(FenErrorKind::IllegalPlacement, "en-passant square on wrong rank");
    }
    Square pushed(ep.file(), white_to_move ? 4 : 3);
    Square origin(ep.file(), white_to_move ? 6 : 1);
    if (p.at(ep) || p.at(origin) ||
        !has_piece(p, pushed, opposite(p.side_to_move), PieceKind::Pawn)) {
      throw FenError(FenErrorKind::IllegalPlacement,
                     "en-passant square without a just-pushed pawn");
    }
  }

  if (in_check(p, opposite(p.side_to_move))) {
    throw FenError(FenErrorKind::SideNotToMoveInCheck, "side not to move is in check");
  }
}

}  // namespace

std::optional<Piece> Position::at(Square sq) const {
  std::int8_t code = board[static_cast<std::size_t>(sq.index)];
  if (code == 0) return std::nullopt;
  return decode(code);
}

void Position::set(Square sq, std::optional<Piece> piece) {
  board[static_cast<std::size_t>(sq.index)] = piece ? encode(*piece) : std::int8_t{0};
}

Square Position::king_square(Color c) const {
  const std::int8_t target = encode(Piece{c, PieceKind::King});
  for (int i = 0; i < 64; ++i) {
    if (board[static_cast<std::size_t>(i)] == target) return Square(i);
  }
  assert(false && "position without a king");
  return Square(0);
}

std::string square_name(Square sq) {
  return {static_cast<char>('a' + sq.file()), static_cast<char>('1' + sq.rank())};
}

std::optional<Square> parse_square(std::string_view text) {
  if (text.size() != 2) return std::nullopt;
  int file = text[0] - 'a';
  int rank = text[1] - '1';
  if (file < 0 || file > 7 || rank < 0 || rank > 7) return std::nullopt;
  return Square(file, rank);
}

Position parse_fen_fields(std::string_view board, std::string_view stm,
                          std::string_view castling, std::string_view en_passant,
                          std::string_view halfmove, std::string_view fullmove) {
  Position p;

  int rank = 7;
  int file = 0;
  for (char c : board) {
    if (c == '/') {
      if (file != 8 || rank == 0) {
        throw FenError(FenErrorKind::MalformedField, "bad board field: rank break");
      }
      --rank;
      file = 0;
    } else if (c >= '1' && c <= '8') {
      file += c - '0';
      if (file > 8) throw FenError(FenErrorKind::MalformedField, "bad board field: rank overflow");
    } else {
      auto piece = piece_from_char(c);
      if (!piece || file > 7) {
        throw FenError(FenErrorKind::MalformedField,
                       std::string("bad board field: character '") + c + "'");
      }
      p.set(Square(file, rank), *piece);
      ++file;
    }
  }
  if (rank != 0 || file != 8) {
    throw FenError(FenErrorKind::MalformedField, "bad board field: wrong shape");
  }

  if (stm == "w") {
    p.side_to_move = Color::White;
  } else if (stm == "b") {
    p.side_to_move = Color::Black;
  } else {
    throw FenError(FenErrorKind::MalformedField, "bad side-to-move field");
  }

  if (castling != "-") {
    for (char c : castling) {
      switch (c) {
        case 'K': p.castling |= kWhiteKingside; break;
        case 'Q': p.castling |= kWhiteQueenside; break;
        case 'k': p.castling |= kBlackKingside; break;
        case 'q': p.castling |= kBlackQueenside; break;
        default:
          throw FenError(FenErrorKind::MalformedField, "bad castling field");
      }
    }
    if (castling.empty()) throw FenError(FenErrorKind::MalformedField, "bad castling field");
  }

  if (en_passant != "-") {
    auto sq = parse_square(en_passant);
    if (!sq) throw FenError(FenErrorKind::MalformedField, "bad en-passant field");
    p.en_passant = *sq;
  }

  p.halfmove_clock = parse_count(halfmove, "halfmove clock", 0);
  p.fullmove_number = parse_count(fullmove, "fullmove number", 1);

  validate(p);
  return p;
}

Position parse_fen(std::string_view fen) {
  std::array<std::string, 6> fields;
  std::size_t n = 0;
  std::istringstream in{std::string(fen)};
  std::string token;
  while (in >> token) {
    if (n == 6) throw FenError(FenErrorKind::MalformedField, "FEN has more than 6 fields");
    fields[n++] = token;
  }
  if (n != 6) throw FenError(FenErrorKind::MalformedField, "FEN must have 6 fields");
  return parse_fen_fields(fields[0], fields[1], fields[2], fields[3], fields[4], fields[5]);
}

std::string to_fen(const Position& p) {
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    int empty = 0;
    for (int file = 0; file < 8; ++file) {
      auto piece = p.at(Square(file, rank));
      if (!piece) {
        ++empty;
        continue;
      }
      if (empty > 0) {
        out += static_cast<char>('0' + empty);
        empty = 0;
      }
      out += piece_char(*piece);
    }
    if (empty > 0) out += static_cast<char>('0' + empty);
    if (rank > 0) out += '/';
  }

  out += p.side_to_move == Color::White ? " w " : " b ";

  if (p.castling == 0) {
    out += '-';
  } else {
    if (p.castling & kWhiteKingside) out += 'K';
    if (p.castling & kWhiteQueenside) out += 'Q';
    if (p.castling & kBlackKingside) out += 'k';
    if (p.castling & kBlackQueenside) out += 'q';
  }

  out += ' ';
  out += p.en_passant ? square_name(*p.en_passant) : "-";
  out += ' ';
  out += std::to_string(p.halfmove_clock);
  out += ' ';
  out += std::to_string(p.fullmove_number);
  return out;
}

Position start_position() { return parse_fen(kStartFen); }

int material_eval(const Position& p) {
  // Signed weights indexed by the raw board code (bit 3 = black).
  static constexpr std::array<int, 16> kSigned = {
      0, 100, 300, 300, 500, 900, 0, 0, 0, -100, -300, -300, -500, -900, 0, 0};
  int white = 0;
  for (std::int8_t code : p.board) white += kSigned[static_cast<std::size_t>(code)];
  return p.side_to_move == Color::White ? white : -white;
}

namespace {
// Castling-right bits cleared when a move touches the square.
constexpr std::uint8_t rights_mask(int index) {
  switch (index) {
    case 0: return kWhiteQueenside;
    case 4: return kWhiteKingside | kWhiteQueenside;
    case 7: return kWhiteKingside;
    case 56: return kBlackQueenside;
    case 60: return kBlackKingside | kBlackQueenside;
    case 63: return kBlackKingside;
    default: return 0;
  }
}
}  // namespace

Position apply_move(const Position& p, const Move& m) {
  Position q = p;
  apply_move_in_place(q, m);
  return q;
}

void apply_move_in_place(Position& q, const Move& m) {
  auto mover = q.at(m.from);
  assert(mover && mover->color == q.side_to_move && "apply_move: no mover piece");
  assert(m.from != m.to && "apply_move: null move");

  const Color us = q.side_to_move;

  if (m.is_en_passant) {
    assert(q.en_passant && m.to == *q.en_passant);
    q.set(Square(m.to.file(), m.from.rank()), std::nullopt);
  }

  q.set(m.from, std::nullopt);
  Piece placed = *mover;
  if (m.promotion) {
    assert(mover->kind == PieceKind::Pawn && (m.to.rank() == 0 || m.to.rank() == 7));
    placed.kind = *m.promotion;
  }
  q.set(m.to, placed);

  if (m.is_castle) {
    const int rank = m.from.rank();
    if (m.to.file() == 6) {  // kingside: rook h -> f
      q.set(Square(7, rank), std::nullopt);
      q.set(Square(5, rank), Piece{us, PieceKind::Rook});
    } else {  // queenside: rook a -> d
      q.set(Square(0, rank), std::nullopt);
      q.set(Square(3, rank), Piece{us, PieceKind::Rook});
    }
  }

  q.castling &= static_cast<std::uint8_t>(~rights_mask(m.from.index));
  q.castling &= static_cast<std::uint8_t>(~rights_mask(m.to.index));

  q.en_passant.reset();
  if (mover->kind == PieceKind::Pawn && std::abs(m.to.rank() - m.from.rank()) == 2) {
    q.en_passant = Square(m.from.file(), (m.from.rank() + m.to.rank()) / 2);
  }

  if (mover->kind == PieceKind::Pawn || m.is_capture) {
    q.halfmove_clock = 0;
  } else {
    ++q.halfmove_clock;
  }
  if (us == Color::Black) ++q.fullmove_number;
  q.side_to_move = opposite(us);
}

}  // namespace entroply::chess
