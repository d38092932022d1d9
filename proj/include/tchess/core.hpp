// Core rules for chess on an unbounded integer board, restricted to a finite
// window for analysis. No castling, no promotion, no en passant, no double
// pawn step; optional short-range pieces and an optional Black pass move.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tchess {

// ---------------------------------------------------------------- squares

struct Square {
  int file = 0;  // 1 == "a"; may be <= 0 in global coordinates
  int rank = 0;  // may be <= 0
  auto operator<=>(const Square&) const = default;
};

inline Square sq(int file, int rank) { return Square{file, rank}; }

// Bijective base-26 file names: 1->a, 26->z, 27->aa, 28->ab, ...
std::string file_to_string(int file);          // requires file >= 1
std::string square_to_string(Square s);        // "(x,y)" fallback if file < 1
std::optional<Square> square_from_string(const std::string& text);

// ----------------------------------------------------------------- pieces

enum class Color : std::uint8_t { White, Black };
inline Color other(Color c) { return c == Color::White ? Color::Black : Color::White; }

enum class Kind : std::uint8_t { King, Queen, Rook, Bishop, Knight, Pawn };

struct Piece {
  Color color = Color::White;
  Kind kind = Kind::Pawn;
  auto operator<=>(const Piece&) const = default;
};

char piece_to_char(Piece p);                       // KQRBNP / kqrbnp
std::optional<Piece> piece_from_char(char c);
std::string piece_to_string(Piece p);              // "wP", "bK"
std::optional<Piece> piece_from_string(const std::string& s);

// ---------------------------------------------------------------- variant

enum class Range : std::uint8_t { LongRange, ShortRange };

struct Variant {
  Range range = Range::LongRange;
  int maxDist = 7;             // slider cap when range == ShortRange
  bool blackMayPass = false;
  bool fiftyMoveRule = false;  // 100 plies without capture or pawn move
  bool threefoldRule = false;
  auto operator<=>(const Variant&) const = default;
};

enum class Boundary : std::uint8_t { EmptyBeyond, WallBeyond };

struct Rect {
  Square lo, hi;  // inclusive corners, lo <= hi componentwise
  bool contains(Square s) const {
    return s.file >= lo.file && s.file <= hi.file && s.rank >= lo.rank && s.rank <= hi.rank;
  }
  auto operator<=>(const Rect&) const = default;
};

// ------------------------------------------------------------------ moves

struct Move {
  Square from{}, to{};
  bool isPass = false;
  auto operator<=>(const Move&) const = default;  // pass sorts after by design below
};

inline Move pass_move() { Move m; m.isPass = true; m.from = m.to = Square{INT32_MAX, INT32_MAX}; return m; }
std::string move_to_string(const Move& m);        // "e2e4", "e2xe4" needs position; plain here
std::optional<Move> move_from_string(const std::string& s);

// --------------------------------------------------------------- position

enum class GameStatus : std::uint8_t { Ongoing, Checkmate, Stalemate, DrawByRule };

struct TerminalStatus {
  GameStatus status = GameStatus::Ongoing;
  std::optional<Color> winner;   // set iff status == Checkmate
  std::string rule;              // "fifty-move" / "threefold" when DrawByRule
};

class Position {
 public:
  Position() = default;
  // Throws std::invalid_argument on invariant violations: pieces outside the
  // region, more than one king per color, or the side not to move in check.
  Position(Variant v, Rect region, Boundary boundary, Color toMove,
           std::map<Square, Piece> pieces, int halfmoveClock = 0);

  const Variant& variant() const { return variant_; }
  const Rect& region() const { return region_; }
  Boundary boundary() const { return boundary_; }
  Color toMove() const { return toMove_; }
  int halfmoveClock() const { return clock_; }
  const std::map<Square, Piece>& pieces() const { return pieces_; }
  std::optional<Piece> pieceAt(Square s) const;
  std::optional<Square> kingSquare(Color c) const;

  // True if any piece of color `by` attacks square `s`.
  bool attacks(Color by, Square s) const;
  bool inCheck(Color c) const;  // false when c has no king

  // Legal moves in deterministic order: non-pass moves sorted by (from, to),
  // then the pass move if the variant grants one to Black.
  std::vector<Move> legalMoves() const;
  bool isLegal(const Move& m) const;
  Position applyMove(const Move& m) const;  // throws on illegal moves

  TerminalStatus terminalStatus() const;

  std::uint64_t fingerprint() const;  // pieces + side to move (not clocks)

  std::string serialize() const;                       // "format=1" text
  static Position parse(const std::string& text);      // throws on bad input

  // SAN-like notation, enough for the construction lines: "Bg11", "Bxg11",
  // "hxg11", "f17", optional trailing +/#, and "pass". Throws if the token
  // does not resolve to exactly one legal move.
  Move resolveSan(const std::string& token) const;
  std::string sanForMove(const Move& m) const;

 private:
  void generatePieceMoves(Square from, std::vector<Move>& out) const;  // pseudo-legal
  bool kingSafeAfter(const Move& m) const;

  Variant variant_{};
  Rect region_{Square{1, 1}, Square{8, 8}};
  Boundary boundary_ = Boundary::EmptyBeyond;
  Color toMove_ = Color::White;
  std::map<Square, Piece> pieces_;
  int clock_ = 0;
  std::map<std::uint64_t, int> history_;  // repetition counts, used iff threefoldRule
};

// Replays SAN-like tokens from `start`; throws with a ply-indexed message on
// the first illegal or ambiguous token.
Position replay_line(const Position& start, const std::vector<std::string>& sanLine);
std::vector<std::string> split_san_line(const std::string& text);  // strips move numbers

}  // namespace tchess
