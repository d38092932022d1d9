// Acceptance gate: one pass/fail line per criterion. Exit code 0 iff all
// criteria pass. Budgets and tolerances are pinned in the constants below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tchess/bishop.hpp"
#include "tchess/core.hpp"
#include "tchess/fixtures.hpp"
#include "tchess/games.hpp"
#include "tchess/pawn.hpp"
#include "tchess/render.hpp"
#include "tchess/solver.hpp"
#include "tchess/stencil.hpp"

using namespace tchess;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  double budgetSeconds;
  std::function<bool(std::string&)> run;  // fills a short detail string
};

void runCriterion(int index, const Criterion& c) {
  auto t0 = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = c.run(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > c.budgetSeconds) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += "over budget";
  }
  std::printf("%s criterion %d (%s): %.1fs%s%s\n", ok ? "PASS" : "FAIL", index,
              c.name.c_str(), secs, detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// =======================================================================
// Criterion 1: definition-oracle equivalence on random finite specs.
// =======================================================================

// Independent oracle, written directly against the definitions: a node is
// losing when the player to move there has a prefix in the opponent's payoff
// set; the reduced tree keeps nodes with no losing proper prefix; values come
// from explicit backward induction over the width/depth-truncated tree.
namespace oracle {

bool seqInSet(const std::vector<NodeSeq>& set, const NodeSeq& v) {
  for (const auto& s : set)
    if (s == v) return true;
  return false;
}

bool prefixInSet(const std::vector<NodeSeq>& set, const NodeSeq& v) {
  for (size_t len = 0; len <= v.size(); ++len)
    if (seqInSet(set, NodeSeq(v.begin(), v.begin() + len))) return true;
  return false;
}

bool losing(const ExplicitGameSpec& g, const NodeSeq& v) {
  if (v.size() % 2 == 0) return prefixInSet(g.s2, v);  // player one to move
  return prefixInSet(g.s1, v);                         // player two to move
}

bool reduced(const ExplicitGameSpec& g, const NodeSeq& v) {
  for (size_t len = 0; len < v.size(); ++len)
    if (losing(g, NodeSeq(v.begin(), v.begin() + len))) return false;
  return true;
}

struct Val {
  enum Kind { Value, NoValue, Truncated } kind = NoValue;
  int nat = -1;  // all values in these finite trees are naturals
};

Val value(const ExplicitGameSpec& g, const NodeSeq& v, int width, int depth,
          int player) {
  const auto& sWin = player == 1 ? g.s1 : g.s2;
  const auto& sLose = player == 1 ? g.s2 : g.s1;
  if (prefixInSet(sWin, v)) return {Val::Value, 0};
  if (prefixInSet(sLose, v)) return {Val::NoValue, -1};
  if (depth <= 0) return {Val::Truncated, -1};
  bool winnerToMove = (v.size() % 2 == 0) == (player == 1);
  std::vector<Val> kids;
  for (int m = 0; m < width; ++m) {
    NodeSeq child = v;
    child.push_back(m);
    kids.push_back(value(g, child, width, depth - 1, player));
  }
  if (winnerToMove) {
    // A move to an already-won child decides the node even next to truncated
    // siblings; otherwise any truncation leaves the minimum unknown.
    for (const Val& k : kids)
      if (k.kind == Val::Value && k.nat == 0) return {Val::Value, 1};
    for (const Val& k : kids)
      if (k.kind == Val::Truncated) return {Val::Truncated, -1};
    int best = -1;
    for (const Val& k : kids)
      if (k.kind == Val::Value && (best < 0 || k.nat < best)) best = k.nat;
    if (best >= 0) return {Val::Value, best + 1};
    return {Val::NoValue, -1};
  }
  int sup = 0;
  bool truncated = false;
  for (const Val& k : kids) {
    if (k.kind == Val::NoValue) return {Val::NoValue, -1};
    if (k.kind == Val::Truncated) truncated = true;
    if (k.kind == Val::Value) sup = std::max(sup, k.nat);
  }
  if (truncated) return {Val::Truncated, -1};
  return {Val::Value, sup};
}

}  // namespace oracle

bool criterion1(std::string& detail) {
  const int kSpecs = 100, kWidth = 3, kDepth = 5;
  std::mt19937 rng(20240817);
  auto randomSeq = [&](int maxLen) {
    std::uniform_int_distribution<int> len(0, maxLen);
    std::uniform_int_distribution<int> letter(0, kWidth - 1);
    NodeSeq s(len(rng));
    for (int& x : s) x = letter(rng);
    return s;
  };

  // All nodes of the width-3 tree to depth 5.
  std::vector<NodeSeq> nodes{{}};
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].size() == kDepth) continue;
    for (int m = 0; m < kWidth; ++m) {
      NodeSeq child = nodes[i];
      child.push_back(m);
      nodes.push_back(child);
    }
  }

  long long comparisons = 0;
  for (int s = 0; s < kSpecs; ++s) {
    ExplicitGameSpec e;
    std::uniform_int_distribution<int> count(0, 4);
    for (int i = count(rng); i > 0; --i) e.s1.push_back(randomSeq(kDepth));
    for (int i = count(rng); i > 0; --i) e.s2.push_back(randomSeq(kDepth));
    GameSpec g = e.spec();
    for (const NodeSeq& v : nodes) {
      if (is_losing_node(g, v) != oracle::losing(e, v)) {
        detail = "is_losing_node mismatch at spec " + std::to_string(s) +
                 " node " + node_to_string(v);
        return false;
      }
      if (in_reduced_tree(g, v) != oracle::reduced(e, v)) {
        detail = "in_reduced_tree mismatch at spec " + std::to_string(s) +
                 " node " + node_to_string(v);
        return false;
      }
      for (int player : {1, 2}) {
        int depthLeft = kDepth - static_cast<int>(v.size());
        GsValue got = gs_value(g, v, kWidth, depthLeft, player);
        oracle::Val want = oracle::value(e, v, kWidth, depthLeft, player);
        bool same =
            (got.kind == GsKind::Value && want.kind == oracle::Val::Value &&
             got.value == Ordinal::nat(want.nat)) ||
            (got.kind == GsKind::NoValue && want.kind == oracle::Val::NoValue) ||
            (got.kind == GsKind::Truncated && want.kind == oracle::Val::Truncated);
        if (!same) {
          detail = "gs_value mismatch at spec " + std::to_string(s) + " node " +
                   node_to_string(v) + " player " + std::to_string(player);
          return false;
        }
        comparisons += 3;
      }
    }
  }
  detail = std::to_string(comparisons) + " comparisons over " +
           std::to_string(kSpecs) + " specs";
  return true;
}

// =======================================================================
// Criterion 2: caption replay of both node main lines.
// =======================================================================

bool criterion2(std::string& detail) {
  for (auto kind : {BishopStencilName::BlackNodePristine,
                    BishopStencilName::WhiteNodePristine}) {
    Position pos = isolated_node_position(kind);
    const Stencil& st = bishop_stencil(kind);
    if (st.mainline.size() != 27) {
      detail = "main line is not 27 plies";
      return false;
    }
    Position end = replay_line(pos, st.mainline);  // throws on an illegal ply
    auto usedKind = kind == BishopStencilName::BlackNodePristine
                        ? BishopStencilName::BlackNodeUsed
                        : BishopStencilName::WhiteNodeUsed;
    const Stencil& used = bishop_stencil(usedKind);
    for (const auto& [sq, piece] : used.place(used.anchor)) {
      auto got = end.pieceAt(sq);
      if (!got || *got != piece) {
        detail = "used-stencil mismatch at " + square_to_string(sq);
        return false;
      }
    }
  }
  detail = "two 27-ply lines, end states match the used stencils";
  return true;
}

// =======================================================================
// Criterion 3: exhaustive deviation refutation on both node main lines.
// =======================================================================

bool criterion3(std::string& detail) {
  long long states = 0;
  for (const char* name : {"black-node-race", "white-node-race"}) {
    GadgetReport r = verify_gadget(name);
    states += r.statesExplored;
    if (!r.passed) {
      for (const auto& c : r.checks)
        if (!c.passed) {
          detail = std::string(name) + ": " + c.label;
          return false;
        }
      detail = std::string(name) + " failed";
      return false;
    }
  }
  detail = "all deviations refuted, " + std::to_string(states) + " states";
  return true;
}

// =======================================================================
// Criterion 4: king chambers; mate rays and stalemate prevention.
// =======================================================================

bool criterion4(std::string& detail) {
  GadgetReport r = verify_gadget("king-chamber-mate");
  if (!r.passed) {
    detail = "king-chamber-mate fixture failed";
    return false;
  }
  // Exhaustive sweep of the chamber's reachable states from either side to
  // move: every non-terminal state leaves the side to move at least one move.
  const Stencil& kc = stencil_registry("king-chamber");
  auto cells = kc.place(kc.anchor);
  Rect region{{0, 0}, {0, 0}};
  {
    bool first = true;
    for (const auto& [s, p] : cells) {
      if (first) {
        region = {s, s};
        first = false;
      }
      region.lo.file = std::min(region.lo.file, s.file - 3);
      region.lo.rank = std::min(region.lo.rank, s.rank - 3);
      region.hi.file = std::max(region.hi.file, s.file + 3);
      region.hi.rank = std::max(region.hi.rank, s.rank + 3);
    }
  }
  long long visited = 0;
  for (Color toMove : {Color::White, Color::Black}) {
    std::set<std::uint64_t> seen;
    std::vector<Position> frontier{
        Position(Variant{}, region, Boundary::EmptyBeyond, toMove, cells, 0)};
    while (!frontier.empty()) {
      Position pos = std::move(frontier.back());
      frontier.pop_back();
      if (!seen.insert(pos.fingerprint()).second) continue;
      ++visited;
      if (visited > 200000) {
        detail = "state sweep exceeded its cap";
        return false;
      }
      auto moves = pos.legalMoves();
      if (moves.empty() && pos.terminalStatus().status == GameStatus::Ongoing) {
        detail = "non-terminal chamber state with no move";
        return false;
      }
      for (const Move& m : moves) frontier.push_back(pos.applyMove(m));
    }
  }
  detail = std::to_string(visited) + " chamber states swept";
  return true;
}

// =======================================================================
// Criterion 5: pawn mechanics.
// =======================================================================

// Zigzag chain path with turns once long enough (same shape as the fixtures).
ChainPath acceptanceChain(int length) {
  ChainPath p;
  Square cur{3, 3};
  p.squares.push_back(cur);
  int dir = 1;
  for (int i = 1; i < length; ++i) {
    if (i == 4 || i == 6) dir = -dir;
    cur = {cur.file + dir, cur.rank + 1};
    p.squares.push_back(cur);
  }
  return p;
}

bool criterion5(std::string& detail) {
  long long states = 0;
  // Chains of every length 2..12 (turns appear from length 5 on): White
  // forces a pawn onto the base square in exactly 2n-1 plies.
  for (int n = 2; n <= 12; ++n) {
    ChainPath path = acceptanceChain(n);
    Stencil chain = make_pawn_chain(path, std::nullopt);
    auto cells = chain.place(chain.anchor);
    Rect region{{path.squares[0].file - 14, path.squares[0].rank - 3},
                {path.squares[0].file + 14, path.squares[0].rank + n + 3}};
    Position pos(Variant{}, region, Boundary::EmptyBeyond, Color::White, cells, 0);
    Outcome o = solve(pos, Objective::pawnReaches(Color::White, {path.squares.back()}),
                      SearchLimits{2 * n + 4, 20'000'000});
    states += o.statesExplored;
    if (o.result != SolveResult::AttackerWins || o.plies != 2 * n - 1) {
      detail = "chain length " + std::to_string(n) + ": expected a forced climb in " +
               std::to_string(2 * n - 1) + " plies";
      return false;
    }
  }
  for (const char* name : {"confine-to-base-file", "binary-node-breakthrough",
                           "crossing", "z-component-exhaustion",
                           "bounded-king-chamber"}) {
    GadgetReport r = verify_gadget(name);
    states += r.statesExplored;
    if (!r.passed) {
      detail = std::string(name) + " fixture failed";
      return false;
    }
  }
  detail = "chains 2..12 plus all pawn fixtures, " + std::to_string(states) +
           " states";
  return true;
}

// =======================================================================
// Criterion 6: end-to-end bishop equivalence on hand-built specs.
// =======================================================================

struct BishopEndToEnd {
  std::string name;
  ExplicitGameSpec spec;
  // Expected outcome of the Gale-Stewart game at width 2: +1 White wins,
  // -1 Black wins, 0 drawn.
  int gsOutcome;
};

bool criterion6(std::string& detail) {
  const LayoutParams layout{min_layout_k(20), 20};  // minimum validated k = 42
  const Rect rect{{-62, -24}, {84, 84}};            // chamber + depth<=3 junctions
  const int kGsWidth = 2, kGsDepth = 6;
  const SearchLimits winLimits{40, 400'000'000};
  const SearchLimits drawLimits{8, 60'000'000};

  std::vector<BishopEndToEnd> specs;
  {
    BishopEndToEnd a{"white-already-won", {}, +1};
    a.spec.s1 = {{}};
    BishopEndToEnd b{"black-already-won", {}, -1};
    b.spec.s2 = {{}};
    BishopEndToEnd c{"white-wins-move-one", {}, +1};
    c.spec.s1 = {{0}};
    BishopEndToEnd d{"black-wins-any-first-move", {}, -1};
    d.spec.s2 = {{0}, {1}};
    BishopEndToEnd e{"nobody-ever-wins", {}, 0};
    specs = {a, b, c, d, e};
  }

  long long states = 0;
  for (const auto& s : specs) {
    GameSpec g = s.spec.spec();
    GsValue gv = gs_value(g, {}, kGsWidth, kGsDepth, s.gsOutcome < 0 ? 2 : 1);
    if (s.gsOutcome != 0 && gv.kind != GsKind::Value) {
      detail = s.name + ": GS oracle disagrees with the expected outcome";
      return false;
    }
    if (s.gsOutcome == 0 && gv.kind == GsKind::Value) {
      detail = s.name + ": drawn spec has a GS value";
      return false;
    }

    SchematicPosition compiled = compile_bishop(g, layout);
    Position pos = window(compiled, rect, Boundary::EmptyBeyond,
                          KingPolicy::OmitKings)
                       .position;
    if (s.gsOutcome == 0) {
      // Drawn spec: no win found for either side within the pinned bound.
      for (Color c : {Color::White, Color::Black}) {
        Outcome o = solve(pos, Objective::checkmate(c), drawLimits);
        states += o.statesExplored;
        if (o.result == SolveResult::AttackerWins) {
          detail = s.name + ": unexpected forced win";
          return false;
        }
      }
      continue;
    }
    Color winner = s.gsOutcome > 0 ? Color::White : Color::Black;
    Outcome o = solve(pos, Objective::checkmate(winner), winLimits);
    states += o.statesExplored;
    if (o.result != SolveResult::AttackerWins) {
      detail = s.name + ": no forced win for the GS winner (" + o.note + ")";
      return false;
    }
    // Chess value (winner moves to mate) dominates the GS value.
    int chessValue = (o.plies + 1) / 2;
    if (gv.value.isNat() &&
        chessValue < static_cast<int>(gv.value.asNat())) {
      detail = s.name + ": chess value below the GS value";
      return false;
    }
  }
  detail = std::to_string(specs.size()) + " specs, " + std::to_string(states) +
           " states";
  return true;
}

// =======================================================================
// Criterion 7: end-to-end pawn equivalence.
// =======================================================================

bool criterion7(std::string& detail) {
  long long states = 0;
  // (a) Two incomparable depth-1 nodes: White wins the compiled game.
  {
    ZSet z = z_from_support({{0}, {1}}, "pair");
    PawnCompileInfo info = compile_pawn_info(z, 1);
    SchematicPosition compiled = compile_pawn(z, 1);
    Rect rect{{info.bounds.lo.file - 2, info.bounds.lo.rank - 2},
              {info.bounds.hi.file + 2, info.bounds.hi.rank + 2}};
    Position pos = window(compiled, rect, Boundary::EmptyBeyond,
                          KingPolicy::OmitKings, Variant{})
                       .position;
    Outcome o = solve(pos, Objective::checkmate(Color::White),
                      SearchLimits{48, 400'000'000});
    states += o.statesExplored;
    if (o.result != SolveResult::AttackerWins) {
      detail = "pair instance: no forced White win (" + o.note + ")";
      return false;
    }
  }
  // (b) A single branch truncated to depth d: Black survives >= 2d plies.
  for (int d : {2, 3}) {
    std::vector<NodeSeq> support;
    NodeSeq cur;
    for (int i = 0; i < d; ++i) {
      cur.push_back(0);
      support.push_back(cur);
    }
    ZSet z = z_from_support(support, "branch");
    PawnCompileInfo info = compile_pawn_info(z, d);
    SchematicPosition compiled = compile_pawn(z, d);
    Rect rect{{info.bounds.lo.file - 2, info.bounds.lo.rank - 2},
              {info.bounds.hi.file + 2, info.bounds.hi.rank + 2}};
    Position pos = window(compiled, rect, Boundary::EmptyBeyond,
                          KingPolicy::OmitKings, Variant{})
                       .position;
    Outcome o = solve(pos, Objective::checkmate(Color::White),
                      SearchLimits{2 * d, 60'000'000});
    states += o.statesExplored;
    if (o.result == SolveResult::AttackerWins) {
      detail = "depth-" + std::to_string(d) +
               " branch: White mates within 2d plies";
      return false;
    }
  }
  detail = "pair win plus depth-2/3 survival, " + std::to_string(states) +
           " states";
  return true;
}

// =======================================================================
// Criterion 8: strictly increasing value families and value cross-check.
// =======================================================================

bool criterion8(std::string& detail) {
  FamilyReport choosing = value_family("choosing", 1, 5);
  if (!choosing.strictlyIncreasing) {
    detail = "choosing family is not strictly increasing";
    return false;
  }
  FamilyReport chains = value_family("pawn-chain", 2, 8);
  if (!chains.strictlyIncreasing) {
    detail = "pawn-chain family is not strictly increasing";
    return false;
  }
  // Exact finite values agree with the Gale-Stewart reading of chess.
  Position mate1(Variant{}, Rect{{1, 1}, {4, 4}}, Boundary::EmptyBeyond,
                 Color::White,
                 {{{1, 4}, Piece{Color::Black, Kind::King}},
                  {{3, 3}, Piece{Color::White, Kind::King}},
                  {{4, 2}, Piece{Color::White, Kind::Queen}}},
                 0);
  FiniteValue fv = game_value_finite(mate1);
  if (fv.kind != FiniteValue::Kind::Value) {
    detail = "game_value_finite failed on the cross-check fixture";
    return false;
  }
  GsValue gv = gs_value(chess_as_gs(mate1), {},
                        static_cast<int>(mate1.legalMoves().size()), 6, 1);
  if (gv.kind != GsKind::Value || !(gv.value == Ordinal::nat(fv.value))) {
    detail = "game_value_finite disagrees with gs_value on chess_as_gs";
    return false;
  }
  std::string values;
  for (const auto& e : chains.entries) values += e.value + " ";
  detail = "chain plies " + values + "; choosing values to " +
           choosing.entries.back().value;
  return true;
}

// =======================================================================
// Criterion 9: determinism and format round-trips.
// =======================================================================

bool criterion9(std::string& detail) {
  // Compile / window / solve / render twice; every artifact is byte-stable.
  ExplicitGameSpec e;
  e.s1 = {{0}, {1, 0}};
  const LayoutParams layout{50, 20};
  Rect rect{{-30, -30}, {60, 60}};
  std::string pos1, pos2;
  for (std::string* out : {&pos1, &pos2}) {
    SchematicPosition sp = compile_bishop(e.spec(), layout);
    *out = window(sp, rect, Boundary::EmptyBeyond, KingPolicy::OmitKings)
               .position.serialize();
  }
  if (pos1 != pos2) {
    detail = "compile+window is not deterministic";
    return false;
  }
  Position pos = Position::parse(pos1);
  if (pos.serialize() != pos1) {
    detail = "position format does not round-trip";
    return false;
  }
  if (render_ascii(pos) != render_ascii(Position::parse(pos.serialize()))) {
    detail = "render is not deterministic";
    return false;
  }
  Position mate1(Variant{}, Rect{{1, 1}, {4, 4}}, Boundary::EmptyBeyond,
                 Color::White,
                 {{{1, 4}, Piece{Color::Black, Kind::King}},
                  {{3, 3}, Piece{Color::White, Kind::King}},
                  {{4, 2}, Piece{Color::White, Kind::Queen}}},
                 0);
  for (int i = 0; i < 2; ++i) {
    static Outcome first;
    Outcome o = solve(mate1, Objective::checkmate(Color::White),
                      SearchLimits{6, 1'000'000});
    if (i == 0) {
      first = o;
    } else if (o.result != first.result || o.plies != first.plies ||
               o.principal != first.principal ||
               o.statesExplored != first.statesExplored) {
      detail = "solve is not deterministic";
      return false;
    }
  }
  // Pawn side round-trips through its own compile path.
  ZSet z = z_from_support({{0}, {1}}, "pair");
  SchematicPosition p1 = compile_pawn(z, 1);
  SchematicPosition p2 = compile_pawn(z, 1);
  Rect prect{{-40, -40}, {40, 30}};
  if (window(p1, prect, Boundary::EmptyBeyond, KingPolicy::OmitKings)
          .position.serialize() !=
      window(p2, prect, Boundary::EmptyBeyond, KingPolicy::OmitKings)
          .position.serialize()) {
    detail = "compile-pawn is not deterministic";
    return false;
  }
  detail = "byte-stable artifacts and exact round-trips";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"definition-oracle equivalence", 60, criterion1},
      {"caption replay", 10, criterion2},
      {"deviation refutation", 600, criterion3},
      {"king chambers", 60, criterion4},
      {"pawn mechanics", 600, criterion5},
      {"end-to-end bishop equivalence", 3600, criterion6},
      {"end-to-end pawn equivalence", 3600, criterion7},
      {"value families", 600, criterion8},
      {"determinism and formats", 60, criterion9},
  };
  for (size_t i = 0; i < criteria.size(); ++i)
    runCriterion(static_cast<int>(i) + 1, criteria[i]);
  if (failures) {
    std::printf("ACCEPTANCE FAILED: %d criterion(s)\n", failures);
    return 1;
  }
  std::printf("ACCEPTANCE PASSED: all 9 criteria\n");
  return 0;
}
