#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace entroply::chess {

enum class Color : std::uint8_t { White, Black };

constexpr Color opposite(Color c) { return c == Color::White ? Color::Black : Color::White; }

enum class PieceKind : std::uint8_t { Pawn, Knight, Bishop, Rook, Queen, King };

inline constexpr int kNumPieceKinds = 6;

/// Material weights in centipawns, indexed by PieceKind. Kings carry no
/// material value; mate handling lives in the search.
inline constexpr std::array<int, kNumPieceKinds> kMaterialWeight = {100, 300, 300, 500, 900, 0};

struct Piece {
  Color color;
  PieceKind kind;
  bool operator==(const Piece&) const = default;
};

/// Board square, index 0..63 with a1 = 0, b1 = 1, ..., h8 = 63.
struct Square {
  std::int8_t index = 0;

  constexpr Square() = default;
  constexpr explicit Square(int idx) : index(static_cast<std::int8_t>(idx)) {}
  constexpr Square(int file, int rank) : index(static_cast<std::int8_t>(rank * 8 + file)) {}

  constexpr int file() const { return index & 7; }
  constexpr int rank() const { return index >> 3; }

  auto operator<=>(const Square&) const = default;
};

std::string square_name(Square sq);
std::optional<Square> parse_square(std::string_view text);

struct Move {
  Square from;
  Square to;
  std::optional<PieceKind> promotion;
  bool is_capture = false;
  bool is_en_passant = false;
  bool is_castle = false;

  bool operator==(const Move&) const = default;
};

struct MoveCategory {
  enum class Type : std::uint8_t { Check, CheckCapture, Capture, Promotion, Quiet };

  Type type = Type::Quiet;
  PieceKind victim = PieceKind::Pawn;  // meaningful for Capture / CheckCapture only

  bool operator==(const MoveCategory&) const = default;

  static constexpr MoveCategory check() { return {Type::Check, PieceKind::Pawn}; }
  static constexpr MoveCategory check_capture(PieceKind v) { return {Type::CheckCapture, v}; }
  static constexpr MoveCategory capture(PieceKind v) { return {Type::Capture, v}; }
  static constexpr MoveCategory promotion() { return {Type::Promotion, PieceKind::Pawn}; }
  static constexpr MoveCategory quiet() { return {Type::Quiet, PieceKind::Pawn}; }
};

enum class GameStatus : std::uint8_t { Ongoing, Checkmate, Stalemate };

// Castling right bits.
inline constexpr std::uint8_t kWhiteKingside = 1;
inline constexpr std::uint8_t kWhiteQueenside = 2;
inline constexpr std::uint8_t kBlackKingside = 4;
inline constexpr std::uint8_t kBlackQueenside = 8;

/// Full game state. Plain value type; all operations below are pure
/// functions, so positions can be copied and shared freely across threads.
struct Position {
  std::array<std::int8_t, 64> board{};  // 0 = empty, otherwise encoded Piece
  Color side_to_move = Color::White;
  std::uint8_t castling = 0;
  std::optional<Square> en_passant;
  int halfmove_clock = 0;
  int fullmove_number = 1;

  std::optional<Piece> at(Square sq) const;
  void set(Square sq, std::optional<Piece> piece);
  Square king_square(Color c) const;

  bool operator==(const Position&) const = default;
};

enum class FenErrorKind : std::uint8_t {
  MalformedField,
  IllegalPlacement,
  SideNotToMoveInCheck,
};

class FenError : public std::runtime_error {
 public:
  FenError(FenErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  FenErrorKind kind() const { return kind_; }

 private:
  FenErrorKind kind_;
};

inline constexpr std::string_view kStartFen =
    "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

/// Parses a 6-field FEN string. Throws FenError on malformed fields,
/// impossible piece placement (wrong king count, pawns on back ranks,
/// inconsistent castling rights or en-passant square) and on positions
/// where the side not to move is in check.
Position parse_fen(std::string_view fen);

/// Parses the first four FEN fields and defaults the counters to "0 1".
/// Used by the EPD loader.
Position parse_fen_fields(std::string_view board, std::string_view stm,
                          std::string_view castling, std::string_view en_passant,
                          std::string_view halfmove = "0", std::string_view fullmove = "1");

std::string to_fen(const Position& p);

Position start_position();

/// True iff `sq` is attacked by any piece of color `by`.
bool is_attacked(const Position& p, Square sq, Color by);

bool in_check(const Position& p, Color c);

/// All legal moves in deterministic order: ascending from-square, then
/// to-square, then promotion kind. Empty result means mate or stalemate.
std::vector<Move> generate_legal_moves(const Position& p);
void generate_legal_moves(const Position& p, std::vector<Move>& out);

/// Applies a legal move. Passing an illegal move is a programming error
/// (checked by assertion, not by exception).
Position apply_move(const Position& p, const Move& m);

/// In-place variant for hot paths that already hold a copy.
void apply_move_in_place(Position& p, const Move& m);

GameStatus game_status(const Position& p);

/// Category of a legal move. Check status dominates, then capture:
/// a capturing promotion classifies as Capture, a checking one as Check.
MoveCategory classify_move(const Position& p, const Move& m);

/// Category from precomputed facts; shared by classify_move and the search,
/// which caches the gives-check flag per child.
MoveCategory categorize(const Move& m, bool gives_check, PieceKind victim);

/// Victim kind of a capturing move (en-passant victims are pawns).
PieceKind capture_victim(const Position& p, const Move& m);

/// Shannon material sum from the side-to-move perspective, in centipawns.
int material_eval(const Position& p);

/// Leaf count of the legal-move tree at exactly `depth`.
std::uint64_t perft(const Position& p, int depth);

/// Legal child of a position, produced by the expansion used in search:
/// the move, the resulting position, whether it gives check, and the
/// absolute material swing in centipawns seen by the mover.
struct Child {
  Move move;
  Position position;
  bool gives_check = false;
  int eval_delta = 0;
};

/// Expands all legal children in generation order. `out` is reused.
void expand_children(const Position& p, std::vector<Child>& out);

/// Standard Algebraic Notation, with +/# suffixes.
std::string to_san(const Position& p, const Move& m);

/// Finds the legal move matching a SAN token; +/# suffixes are optional.
std::optional<Move> find_move_by_san(const Position& p, std::string_view san);

}  // namespace entroply::chess
