// Open games with draws on the infinite tree of natural-number sequences,
// ordinal game values under width/depth truncation, and the auxiliary game of
// choosing comparable nodes from a subset Z of the tree.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tchess/core.hpp"

namespace tchess {

using NodeSeq = std::vector<int>;

std::string node_to_string(const NodeSeq& v);                 // "(0,1,3)" ; "()" for root
std::optional<NodeSeq> node_from_string(const std::string&);

// True if a is a prefix of b (possibly equal).
bool is_prefix(const NodeSeq& a, const NodeSeq& b);
bool comparable(const NodeSeq& a, const NodeSeq& b);

// --------------------------------------------------------------- ordinals

// Ordinals below epsilon_0 in Cantor normal form: sum of w^exp * coeff with
// strictly decreasing exponents. Empty term list is 0.
class Ordinal {
 public:
  std::vector<std::pair<Ordinal, std::uint64_t>> terms;

  static Ordinal nat(std::uint64_t n);
  static Ordinal omega();

  bool isNat() const;
  std::uint64_t asNat() const;  // requires isNat()

  Ordinal succ() const;
  static Ordinal sup(const std::vector<Ordinal>& xs);  // max of a finite set

  int compare(const Ordinal& o) const;  // -1 / 0 / +1
  bool operator==(const Ordinal& o) const { return compare(o) == 0; }
  bool operator<(const Ordinal& o) const { return compare(o) < 0; }
  bool operator<=(const Ordinal& o) const { return compare(o) <= 0; }

  std::string to_string() const;  // e.g. "0", "3", "w", "w+1", "w^2*2+w*3+4"
};

// ------------------------------------------------------- Gale-Stewart side

// A game is given by the payoff sets S1 and S2 (sets of finite sequences);
// player one moves at even lengths. A play is won by player i once some
// prefix lies in Si. Plays where that never happens are draws.
struct GameSpec {
  std::function<bool(const NodeSeq&)> inS1;
  std::function<bool(const NodeSeq&)> inS2;
};

bool any_prefix_in(const std::function<bool(const NodeSeq&)>& S, const NodeSeq& v);

// v is losing if the player to move there has already lost: player one to
// move (even length) with a prefix in S2, or player two to move with a
// prefix in S1.
bool is_losing_node(const GameSpec& g, const NodeSeq& v);
// v lies in the reduced tree: no proper prefix of v is losing.
bool in_reduced_tree(const GameSpec& g, const NodeSeq& v);

enum class GsKind { Value, NoValue, Truncated };
struct GsValue {
  GsKind kind = GsKind::NoValue;
  Ordinal value;  // meaningful iff kind == Value
  bool operator==(const GsValue&) const = default;
};

// Game value for `player` (1 or 2) at node v of the truncated game where
// each position has options 0..widthBound-1 and play is cut depthBound plies
// below v. Truncated leaves propagate GsKind::Truncated; a reported Value is
// exact for the width-truncated game.
GsValue gs_value(const GameSpec& g, const NodeSeq& v, int widthBound, int depthBound,
                 int player = 1);

// Chess as a Gale-Stewart game: moves are indices into the legal move list
// (deterministic order); an out-of-range index loses immediately for the
// mover; after checkmate or a drawn terminal state further numbers are
// ignored. Player one is White; `start` must have White to move.
GameSpec chess_as_gs(const Position& start);

// Parse a GameSpec from text: either
//   format=1 / kind=builtin / name=<builtin>          or
//   format=1 / kind=explicit / s1 <ints...> / s2 <ints...>
// Builtins: "p1-wins-empty" (S1={()}), "p2-mirror" and the acceptance
// family "tiny-<id>" are registered by the bishop compiler tests.
struct ExplicitGameSpec {
  std::vector<NodeSeq> s1, s2;
  GameSpec spec() const;
};
ExplicitGameSpec gamespec_parse(const std::string& text);
std::string gamespec_serialize(const ExplicitGameSpec&);

// ------------------------------------------------------- choosing from Z

// Z is a set of nonempty finite sequences ("nodes of the tree"). Black names
// distinct elements of Z; as soon as two named nodes are incomparable White
// has won; if Black always keeps the named set a chain the play is drawn.
struct ZSet {
  std::function<bool(const NodeSeq&)> contains;
  std::vector<NodeSeq> support;  // finite enumeration when available
  bool supportComplete = false;  // support lists all of Z
  std::optional<Ordinal> valueLowerBound;
  std::string name;
};

ZSet z_omega_ladder();                     // { 0^{i-1} 1^j : 1 <= j <= i }, bound w
std::vector<NodeSeq> omega_ladder_support(int levels);  // branches 1..levels
ZSet z_omega_ladder_truncated(int levels);
ZSet z_succ(const ZSet& z);                // {()}... grafted: {( )} u {0^z}: bound a+1
ZSet z_limit(const std::vector<ZSet>& zs); // graft z_i under 0^{i-1} 1, bound sup
ZSet z_from_support(std::vector<NodeSeq> support, std::string name = "explicit");

struct ChoosingState {
  std::vector<NodeSeq> named;
  bool blackToMove = true;
};
enum class ChoosingStatus { Ongoing, WhiteWon, BlackStuck };

// Validates and applies Black's naming of `choice` (must be a fresh element
// of Z); throws std::invalid_argument otherwise. White's interleaved move is
// a fixed no-op: step with std::nullopt when it is White's turn.
ChoosingState choosing_step(const ChoosingState& s, const ZSet& z,
                            const std::optional<NodeSeq>& choice);
ChoosingStatus choosing_status(const ChoosingState& s, const ZSet& z);

// Exact value (for White, counting White's no-op moves in the usual ordinal
// value sense) of the choosing game restricted to a finite support.
Ordinal choosing_value(const std::vector<NodeSeq>& support);

}  // namespace tchess
