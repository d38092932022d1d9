// Objective-directed solving over finite windows: bounded AND/OR search with
// a depth-indexed transposition table, exact small-graph game values, and
// forced-line verification with exhaustive deviation refutation.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tchess/core.hpp"

namespace tchess {

struct Objective {
  enum class Kind { CheckmateWin, PawnReaches, EscapeRace };
  enum class DrawPolicy { DrawIsFailure, DrawIsSuccessForDefender };
  Kind kind = Kind::CheckmateWin;
  Color attacker = Color::White;
  // Both policies treat a draw as a failed attack; the flag only selects how
  // the outcome is reported (Draw vs DefenderHolds) when the bound is exact.
  DrawPolicy drawPolicy = DrawPolicy::DrawIsSuccessForDefender;

  // PawnReaches: the attacker wins as soon as one of its pawns stands on a
  // target square.
  std::vector<Square> targets;

  // EscapeRace: the attacker wins once one of its bishops has occupied a
  // square of raySetA and `marginPlies` further plies elapse without the
  // defender condition coming true. The defender condition is: a defender
  // bishop occupies a square of raySetB, or (if defenderMayGuard) any
  // defender piece attacks or occupies one.
  std::vector<Square> raySetA, raySetB;
  int marginPlies = 0;
  bool defenderMayGuard = false;

  static Objective checkmate(Color attacker) {
    Objective o;
    o.kind = Kind::CheckmateWin;
    o.attacker = attacker;
    return o;
  }
  static Objective pawnReaches(Color attacker, std::vector<Square> targets) {
    Objective o;
    o.kind = Kind::PawnReaches;
    o.attacker = attacker;
    o.targets = std::move(targets);
    return o;
  }
  static Objective escapeRace(Color attacker, std::vector<Square> a, std::vector<Square> b,
                              int marginPlies, bool defenderMayGuard) {
    Objective o;
    o.kind = Kind::EscapeRace;
    o.attacker = attacker;
    o.raySetA = std::move(a);
    o.raySetB = std::move(b);
    o.marginPlies = marginPlies;
    o.defenderMayGuard = defenderMayGuard;
    return o;
  }
};

struct SearchLimits {
  int maxPlies = 64;
  long long maxStates = 20'000'000;
};

enum class SolveResult { AttackerWins, DefenderHolds, Draw, Unknown };

struct Outcome {
  SolveResult result = SolveResult::Unknown;
  int plies = -1;                 // minimal forcing depth when AttackerWins
  std::vector<Move> principal;    // one optimal line (shortest win, lexicographic ties)
  long long statesExplored = 0;
  std::string note;
};

// Deterministic: result, plies and principal line depend only on the inputs.
Outcome solve(const Position& root, const Objective& objective, const SearchLimits& limits);

// Exact game value counting White moves until Black is checkmated (0 means
// Black is checkmated right now), by full enumeration of the reachable state
// graph and retrograde labeling. Unknown if the graph exceeds maxStates.
struct FiniteValue {
  enum class Kind { Value, NoValue, Unknown };
  Kind kind = Kind::Unknown;
  int value = -1;
  long long states = 0;
};
FiniteValue game_value_finite(const Position& root, long long maxStates = 2'000'000);

// Verifies that `sanLine` is legal from `start` and that every legal
// alternative at every prefix loses for the deviator: after a deviation at
// ply index i the non-deviating side must achieve its objective within
// (line length - i - 1) + slackPlies plies.
struct DeviationReport {
  int plyIndex = 0;       // 0-based index of the replaced ply
  std::string deviation;  // SAN of the deviating move
  bool refuted = false;
  int refutationPlies = -1;
};
struct LineReport {
  bool lineLegal = false;
  std::string error;
  int deviationsChecked = 0;
  bool allRefuted = true;
  std::vector<DeviationReport> deviations;  // every legal deviation, in order
  std::vector<DeviationReport> failures;    // only unrefuted deviations
  long long statesExplored = 0;
};
LineReport verify_forced_line(const Position& start, const std::vector<std::string>& sanLine,
                              const Objective& whenWhiteDeviates,
                              const Objective& whenBlackDeviates, int slackPlies,
                              const SearchLimits& perDeviation);

}  // namespace tchess
