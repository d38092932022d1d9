#include "tchess/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tchess/pawn.hpp"
#include "tchess/stencil.hpp"

namespace tchess {

namespace {

using Cells = std::map<Square, Piece>;

Position makePos(Cells cells, Color toMove, Rect region) {
  return Position(Variant{}, region, Boundary::EmptyBeyond, toMove,
                  std::move(cells), 0);
}

Rect boundsOf(const Cells& cells, int pad) {
  Rect r{{INT32_MAX, INT32_MAX}, {INT32_MIN, INT32_MIN}};
  for (const auto& [s, p] : cells) {
    r.lo.file = std::min(r.lo.file, s.file);
    r.lo.rank = std::min(r.lo.rank, s.rank);
    r.hi.file = std::max(r.hi.file, s.file);
    r.hi.rank = std::max(r.hi.rank, s.rank);
  }
  return {{r.lo.file - pad, r.lo.rank - pad}, {r.hi.file + pad, r.hi.rank + pad}};
}

void check(GadgetReport& rep, const std::string& label, bool ok,
           std::string detail = "") {
  rep.checks.push_back({label, ok, std::move(detail)});
  if (!ok) rep.passed = false;
}

void solveCheck(GadgetReport& rep, const std::string& label, const Position& pos,
                const Objective& obj, const SearchLimits& limits,
                SolveResult expected, int expectedPlies = -1) {
  Outcome o = solve(pos, obj, limits);
  rep.statesExplored += o.statesExplored;
  std::ostringstream d;
  d << "result=" << static_cast<int>(o.result) << " plies=" << o.plies
    << " states=" << o.statesExplored;
  bool ok = o.result == expected &&
            (expectedPlies < 0 || o.plies == expectedPlies);
  check(rep, label, ok, d.str());
}

// ------------------------------------------------------------- king chamber

// Unopposed bishop checks delivered from the open mate rays of the bishop
// construction's king chamber are checkmate.
GadgetReport kingChamberMate() {
  GadgetReport rep{"king-chamber-mate", true, {}, 0};
  const Stencil& kc = stencil_registry("king-chamber");
  Cells cells = kc.place(kc.anchor);
  Rect region = boundsOf(cells, 3);

  {
    Position w = makePos(cells, Color::White, region);
    Position b = makePos(cells, Color::Black, region);
    check(rep, "pristine: White has exactly one move (cage shuttle)",
          w.legalMoves().size() == 1);
    check(rep, "pristine: Black has exactly one move (cage shuttle)",
          b.legalMoves().size() == 1);
  }

  // Black king's open north-east ray starts at the mateRayBlack port.
  Square bkRay = kc.toGlobal(kc.anchor, kc.ports.at("mateRayBlack"));
  for (int i = 0; i < 3; ++i) {
    Square s{bkRay.file + i, bkRay.rank + i};
    Cells c2 = cells;
    c2[s] = {Color::White, Kind::Bishop};
    Position pos = makePos(c2, Color::Black, region);
    TerminalStatus ts = pos.terminalStatus();
    check(rep,
          "white bishop check from ray square " + std::to_string(i) +
              " is checkmate",
          ts.status == GameStatus::Checkmate && ts.winner == Color::White);
  }
  // White king's open south-east ray, mirrored.
  Square wkRay = kc.toGlobal(kc.anchor, kc.ports.at("mateRayWhite"));
  for (int i = 0; i < 3; ++i) {
    Square s{wkRay.file + i, wkRay.rank - i};
    Cells c2 = cells;
    c2[s] = {Color::Black, Kind::Bishop};
    Position pos = makePos(c2, Color::White, region);
    TerminalStatus ts = pos.terminalStatus();
    check(rep,
          "black bishop check from ray square " + std::to_string(i) +
              " is checkmate",
          ts.status == GameStatus::Checkmate && ts.winner == Color::Black);
  }
  return rep;
}

// ---------------------------------------------------------------- start node

// Every White alternative to advancing the start bishop along the arrow
// diagonal loses the bishop: Black recaptures, freeing a black bishop while
// leaving White at most one free pawn.
GadgetReport startNode() {
  GadgetReport rep{"start-node", true, {}, 0};
  const Stencil& sn = stencil_registry("start-node");
  Cells cells = sn.place(sn.anchor);
  Rect region = boundsOf(cells, 2);
  Position pos = makePos(cells, Color::White, region);
  Square node = sn.toGlobal(sn.anchor, sn.ports.at("node"));

  auto moves = pos.legalMoves();
  bool allBishop = !moves.empty();
  int arrowMoves = 0;
  std::vector<Move> offArrow;
  for (const Move& m : moves) {
    if (m.from != node) allBishop = false;
    if (m.to.file > m.from.file && m.to.rank > m.from.rank)
      ++arrowMoves;
    else
      offArrow.push_back(m);
  }
  check(rep, "White's only mobile piece is the start bishop", allBishop,
        std::to_string(moves.size()) + " moves");
  check(rep, "arrow-direction advances exist", arrowMoves > 0);

  for (const Move& m : offArrow) {
    Position after = pos.applyMove(m);
    // Black recaptures on the bishop's square with a pawn.
    Move recapture;
    bool found = false;
    for (const Move& bm : after.legalMoves())
      if (bm.to == m.to && after.pieceAt(bm.from)->kind == Kind::Pawn) {
        recapture = bm;
        found = true;
        break;
      }
    std::string label = "off-arrow " + pos.sanForMove(m);
    if (!found) {
      check(rep, label + ": Black can recapture", false);
      continue;
    }
    Position final = after.applyMove(recapture);
    // White is left with at most one free pawn and no pieces.
    Position whiteView = makePos(final.pieces(), Color::White, region);
    auto wm = whiteView.legalMoves();
    bool pawnOnly = true;
    for (const Move& x : wm)
      if (whiteView.pieceAt(x.from)->kind != Kind::Pawn) pawnOnly = false;
    // Black has a freed bishop.
    Position blackView = makePos(final.pieces(), Color::Black, region);
    bool freedBishop = false;
    for (const Move& x : blackView.legalMoves())
      if (blackView.pieceAt(x.from)->kind == Kind::Bishop) freedBishop = true;
    check(rep, label + ": recapture leaves White only pawn moves",
          pawnOnly && wm.size() <= 1, std::to_string(wm.size()) + " white moves");
    check(rep, label + ": recapture frees a black bishop", freedBishop);
  }

  // An advance to an unprotected arrow square allows the safe capture of the
  // bishop by the watcher on e5 (through the vacated node square).
  for (const Move& m : moves) {
    if (m.from != node || m.to.file <= m.from.file || m.to.rank <= m.from.rank)
      continue;
    Position after = pos.applyMove(m);
    bool capturable = false;
    for (const Move& bm : after.legalMoves())
      if (bm.to == m.to && after.pieceAt(bm.from)->kind == Kind::Bishop)
        capturable = true;
    check(rep, "unprotected arrow square " + pos.sanForMove(m) +
                   " allows bishop capture",
          capturable);
    break;  // one representative square suffices
  }
  return rep;
}

// ---------------------------------------------------------------- node races

struct NodeRaceSetup {
  Position start;          // lemma hypothesis position (after the entry trade)
  std::vector<std::string> line;
  Objective whenWhiteDeviates, whenBlackDeviates;
};

// Shared assembly for the black-node and white-node race fixtures. The node
// stencil is placed at its anchor, the traveling bishop pair enters on the
// entry diagonal, and a detached double cage (the stalemate-prevention
// complex of the king chamber) supplies each side's waiting move.
//
// The two escape rays leave the figure on opposite sides: the freed defender
// bishop exits past the east edge along the exit diagonal, while the
// traveler's side escapes past the west edge along the dotted mate diagonal
// through the mate anchor (toward the king chambers). A deviation is refuted
// when the opponent wins its race — the freed bishop needs a two-tempo
// margin, the traveler's side a one-tempo margin, and a defender guard of
// the traveler's arrival square voids that escape.
NodeRaceSetup nodeRace(const std::string& stencilName) {
  const Stencil& node = stencil_registry(stencilName);
  Cells cells = node.place(node.anchor);
  Square traveler = node.toGlobal(node.anchor, node.ports.at("traveler"));
  Square chaser = node.toGlobal(node.anchor, node.ports.at("chaser"));
  Color travelerColor =
      node.meta.at("first-to-move") == "white" ? Color::White : Color::Black;
  cells[traveler] = {travelerColor, Kind::Bishop};
  cells[chaser] = {other(travelerColor), Kind::Bishop};

  // Detached double cage west of the node supplies each side's waiting move.
  bool south = stencilName == "black-node";  // exit rays descend for black nodes
  Square cageShift = south ? Square{-11, -9} : Square{-11, 1};
  const Stencil& kc = stencil_registry("king-chamber");
  for (const auto& [s, p] : kc.place(kc.anchor))
    if (s.file <= 4 && s.rank <= 6)
      cells[{s.file + cageShift.file, s.rank + cageShift.rank}] = p;

  Rect region = south ? Rect{{-13, -10}, {20, 26}} : Rect{{-13, -4}, {20, 32}};

  // Continuations of the two diagonals past the figure edges. The exit ray
  // runs east past the exit port; the dotted mate ray runs west past the
  // mate anchor, starting just outside the figure's westmost occupied file.
  Square exitPort = node.toGlobal(node.anchor, node.ports.at("exit"));
  Square mateAnchor = node.toGlobal(node.anchor, node.ports.at("mateAnchor"));
  int dir = south ? -1 : 1;
  int minFile = mateAnchor.file;
  for (const auto& [sq, p] : node.place(node.anchor))
    minFile = std::min(minFile, sq.file);
  std::vector<Square> exitRay, dottedRay;
  for (int i = 1; i <= 3; ++i)
    exitRay.push_back({exitPort.file + i, exitPort.rank + dir * i});
  for (int i = 0; i < 3; ++i) {
    int step = (mateAnchor.file - minFile) + 1 + i;
    dottedRay.push_back({mateAnchor.file - step, mateAnchor.rank - dir * step});
  }

  Color freedColor = other(travelerColor);  // the chased side's bishop
  // The traveler's side may come out on either diagonal: the dotted mate ray
  // directly, or the exit ray into the successor node. The freed side's only
  // meaningful escape is its own exit ray — running out along the dotted ray
  // abandons the race rather than winning it.
  std::vector<Square> bothRays = dottedRay;
  bothRays.insert(bothRays.end(), exitRay.begin(), exitRay.end());
  Objective freedWins =
      Objective::escapeRace(freedColor, exitRay, dottedRay, 2, false);
  Objective travelerWins =
      Objective::escapeRace(travelerColor, bothRays, exitRay, 1, true);

  Position start = makePos(cells, travelerColor, region);
  // Entry trade: the traveler lands on the node square, the chaser takes.
  std::vector<std::string> entry(node.mainline.begin(),
                                 node.mainline.begin() + 2);
  start = replay_line(start, entry);
  std::vector<std::string> rest(node.mainline.begin() + 2,
                                node.mainline.end());

  NodeRaceSetup s{std::move(start), std::move(rest), Objective{}, Objective{}};
  if (travelerColor == Color::White) {
    s.whenWhiteDeviates = freedWins;     // the freed bishop escapes two ahead
    s.whenBlackDeviates = travelerWins;  // White reaches the dotted ray first
  } else {
    s.whenBlackDeviates = freedWins;
    s.whenWhiteDeviates = travelerWins;
  }
  return s;
}

GadgetReport nodeRaceReport(const std::string& fixture,
                            const std::string& stencilName,
                            const std::vector<std::string>& namedDeviations) {
  GadgetReport rep{fixture, true, {}, 0};
  NodeRaceSetup s = nodeRace(stencilName);
  LineReport lr = verify_forced_line(s.start, s.line, s.whenWhiteDeviates,
                                     s.whenBlackDeviates, 10,
                                     SearchLimits{36, 120'000'000});
  rep.statesExplored += lr.statesExplored;
  check(rep, "main line replays", lr.lineLegal, lr.error);
  check(rep, "every deviation refuted",
        lr.allRefuted && lr.deviationsChecked > 0,
        std::to_string(lr.deviationsChecked) + " deviations, " +
            std::to_string(lr.failures.size()) + " failures");
  for (const std::string& name : namedDeviations) {
    bool found = false, refuted = false;
    for (const auto& d : lr.deviations)
      if (d.deviation == name) {
        found = true;
        refuted = d.refuted;
      }
    check(rep, "named deviation " + name + " refuted", found && refuted);
  }
  return rep;
}

GadgetReport blackNodeRace() {
  return nodeRaceReport("black-node-race", "black-node",
                        {"hxi8", "h5", "g19", "fxg18"});
}

GadgetReport whiteNodeRace() {
  return nodeRaceReport("white-node-race", "white-node", {});
}

// ----------------------------------------------------------- pawn mechanics

ChainPath climbPath(int length) {
  // Zigzag with turns once long enough: NE, NE, NE, NW, NW, NE, NE, ...
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

Position chainPosition(int length, int activated, Rect* regionOut = nullptr) {
  ChainPath path = climbPath(length);
  Stencil chain = make_pawn_chain(path, activated);
  Cells cells = chain.place(chain.anchor);
  Rect region = boundsOf(cells, 2);
  if (regionOut) *regionOut = region;
  return makePos(cells, Color::White, region);
}

GadgetReport pawnChainClimb() {
  GadgetReport rep{"pawn-chain-climb", true, {}, 0};
  for (int length : {3, 8}) {
    ChainPath path = climbPath(length);
    Square base = path.squares.back();
    Position pos = chainPosition(length, 0);
    solveCheck(rep,
               "chain of " + std::to_string(length) +
                   ": White forces a pawn onto the base square",
               pos, Objective::pawnReaches(Color::White, {base}),
               SearchLimits{2 * length + 4, 2'000'000}, SolveResult::AttackerWins,
               2 * length - 1);
  }
  return rep;
}

// Exhaustive rollout: White plays anything, Black always captures when able.
// In every reachable state, any white pawn at or above the base rank must be
// on the base file.
GadgetReport confineToBaseFile() {
  GadgetReport rep{"confine-to-base-file", true, {}, 0};
  const int length = 8;
  ChainPath path = climbPath(length);
  Square base = path.squares.back();
  Position start = chainPosition(length, 0);

  std::set<std::uint64_t> seen;
  long long states = 0;
  bool confined = true;
  std::string badDetail;
  std::function<void(const Position&, int)> dfs = [&](const Position& pos,
                                                      int depth) {
    if (!confined || depth > 2 * length + 8) return;
    if (!seen.insert(pos.fingerprint()).second) return;
    ++states;
    for (const auto& [sq, piece] : pos.pieces())
      if (piece.color == Color::White && piece.kind == Kind::Pawn &&
          sq.rank >= base.rank && sq.file != base.file) {
        confined = false;
        badDetail = "white pawn off the base file at (" +
                    std::to_string(sq.file) + "," + std::to_string(sq.rank) + ")";
        return;
      }
    auto moves = pos.legalMoves();
    if (pos.toMove() == Color::Black) {
      // capture-always: restrict to captures when any exist
      std::vector<Move> captures;
      for (const Move& m : moves)
        if (pos.pieceAt(m.to)) captures.push_back(m);
      if (!captures.empty()) moves = captures;
    }
    for (const Move& m : moves) dfs(pos.applyMove(m), depth + 1);
  };
  dfs(start, 0);
  rep.statesExplored += states;
  check(rep, "under Black capture-always every advanced white pawn is on the base file",
        confined, confined ? std::to_string(states) + " states" : badDetail);
  return rep;
}

GadgetReport binaryNodeBreakthrough() {
  GadgetReport rep{"binary-node-breakthrough", true, {}, 0};
  const Stencil& bn = pawn_stencil(PawnStencilName::BinaryNode);
  Cells cells = bn.place(bn.anchor);
  // Activate both arms below the apex by removing one black pawn from each.
  cells.erase({4, 6});
  cells.erase({8, 6});
  cells[{16, 40}] = {Color::Black, Kind::Pawn};  // tempo tank
  Rect region = boundsOf(cells, 2);
  Position pos = makePos(cells, Color::White, region);
  solveCheck(rep, "both arms active: White forces a pawn out the top of the f-file",
             pos,
             Objective::pawnReaches(Color::White, {{6, 12}, {6, 13}, {6, 14}}),
             SearchLimits{32, 60'000'000}, SolveResult::AttackerWins);
  return rep;
}

GadgetReport crossing() {
  GadgetReport rep{"crossing", true, {}, 0};
  {
    const Stencil& cr = pawn_stencil(PawnStencilName::CrossingPristine);
    Cells cells = cr.place(cr.anchor);
    cells[{6, 1}] = {Color::White, Kind::Pawn};    // entry pawn on f1
    cells[{14, 44}] = {Color::Black, Kind::Pawn};  // tempo tank
    Rect region = boundsOf(cells, 2);
    Position pos = makePos(cells, Color::White, region);
    solveCheck(rep, "pristine: entry pawn forces a pawn out the top via the f-file",
               pos,
               Objective::pawnReaches(Color::White, {{6, 13}, {6, 14}, {6, 15}}),
               SearchLimits{48, 120'000'000}, SolveResult::AttackerWins);
  }
  {
    const Stencil& cr = pawn_stencil(PawnStencilName::CrossingInUse);
    Cells cells = cr.place(cr.anchor);
    cells[{14, 40}] = {Color::Black, Kind::Pawn};
    Rect region = boundsOf(cells, 2);
    Position pos = makePos(cells, Color::White, region);
    solveCheck(rep, "in-use: breakthrough wins from the canonical double-pawn state",
               pos,
               Objective::pawnReaches(Color::White, {{6, 13}, {6, 14}, {6, 15}}),
               SearchLimits{32, 40'000'000}, SolveResult::AttackerWins);
  }
  return rep;
}

GadgetReport zComponentExhaustion() {
  GadgetReport rep{"z-component-exhaustion", true, {}, 0};
  const Stencil& z = pawn_stencil(PawnStencilName::ZComponentPristine);
  Cells cells = z.place(z.anchor);
  Rect region = boundsOf(cells, 2);
  {
    Position black = makePos(cells, Color::Black, region);
    auto bm = black.legalMoves();
    check(rep, "pristine: Black's only local move is the naming push",
          bm.size() == 1 && black.sanForMove(bm[0]) == "b5");
    Position white = makePos(cells, Color::White, region);
    check(rep, "pristine: White has no local moves",
          white.legalMoves().empty());
  }
  Position pos = makePos(cells, Color::Black, region);
  pos = replay_line(pos, z.mainline);
  check(rep, "after the main line Black has no local moves",
        pos.toMove() == Color::Black && pos.legalMoves().empty());
  const Stencil& used = pawn_stencil(PawnStencilName::ZComponentActivated);
  check(rep, "post-line cells equal the activated stencil",
        pos.pieces() == used.place(used.anchor));
  return rep;
}

GadgetReport boundedKingChamber() {
  GadgetReport rep{"bounded-king-chamber", true, {}, 0};
  const Stencil& ch = pawn_stencil(PawnStencilName::PawnKingChamber);
  {
    // White pawn on the approach diagonal directly below the deciding chain.
    Cells cells = ch.place(ch.anchor);
    cells[{3, 4}] = {Color::White, Kind::Pawn};
    Rect region = boundsOf(cells, 2);
    Position pos = makePos(cells, Color::White, region);
    solveCheck(rep, "pawn on the approach diagonal forces mate", pos,
               Objective::checkmate(Color::White), SearchLimits{24, 20'000'000},
               SolveResult::AttackerWins);
  }
  {
    // White pawn arriving on the base square itself: mate next move.
    Cells cells = ch.place(ch.anchor);
    cells[{6, 9}] = {Color::White, Kind::Pawn};
    Rect region = boundsOf(cells, 2);
    Position pos = makePos(cells, Color::White, region);
    solveCheck(rep, "pawn on the f9 base square mates next move", pos,
               Objective::checkmate(Color::White), SearchLimits{4, 100'000},
               SolveResult::AttackerWins, 1);
  }
  return rep;
}

FamilyReport pawnChainFamily(int lo, int hi) {
  FamilyReport rep{"pawn-chain", {}, true};
  int prev = -1;
  for (int n = lo; n <= hi; ++n) {
    ChainPath path = climbPath(n);
    Square base = path.squares.back();
    Position pos = chainPosition(n, 0);
    Outcome o = solve(pos, Objective::pawnReaches(Color::White, {base}),
                      SearchLimits{2 * n + 6, 20'000'000});
    if (o.result != SolveResult::AttackerWins)
      throw std::runtime_error("pawn-chain family: no forced breakthrough at n=" +
                               std::to_string(n));
    rep.entries.push_back({n, std::to_string(o.plies), o.statesExplored});
    if (prev >= 0 && o.plies <= prev) rep.strictlyIncreasing = false;
    prev = o.plies;
  }
  return rep;
}

FamilyReport choosingFamily(int lo, int hi) {
  FamilyReport rep{"choosing", {}, true};
  std::optional<Ordinal> prev;
  for (int n = lo; n <= hi; ++n) {
    Ordinal v = choosing_value(omega_ladder_support(n));
    rep.entries.push_back({n, v.to_string(), 0});
    if (prev && !(*prev < v)) rep.strictlyIncreasing = false;
    prev = v;
  }
  return rep;
}

using FixtureFn = GadgetReport (*)();

const std::vector<std::pair<std::string, FixtureFn>>& registry() {
  static const std::vector<std::pair<std::string, FixtureFn>> reg = {
      {"binary-node-breakthrough", &binaryNodeBreakthrough},
      {"black-node-race", &blackNodeRace},
      {"bounded-king-chamber", &boundedKingChamber},
      {"confine-to-base-file", &confineToBaseFile},
      {"crossing", &crossing},
      {"king-chamber-mate", &kingChamberMate},
      {"pawn-chain-climb", &pawnChainClimb},
      {"start-node", &startNode},
      {"white-node-race", &whiteNodeRace},
      {"z-component-exhaustion", &zComponentExhaustion},
  };
  return reg;
}

}  // namespace

std::string GadgetReport::render() const {
  std::ostringstream os;
  os << "fixture " << fixture << "\n";
  for (const auto& c : checks) {
    os << "check " << (c.passed ? "pass" : "FAIL") << " " << c.label;
    if (!c.detail.empty()) os << " [" << c.detail << "]";
    os << "\n";
  }
  os << "result " << (passed ? "pass" : "FAIL") << " states=" << statesExplored
     << "\n";
  return os.str();
}

std::vector<std::string> gadget_fixture_names() {
  std::vector<std::string> names;
  for (const auto& [n, fn] : registry()) names.push_back(n);
  return names;
}

GadgetReport verify_gadget(const std::string& fixtureName) {
  for (const auto& [n, fn] : registry())
    if (n == fixtureName) return fn();
  throw std::out_of_range("unknown fixture: " + fixtureName);
}

FamilyReport value_family(const std::string& family, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("value_family: empty range");
  if (family == "pawn-chain") return pawnChainFamily(lo, hi);
  if (family == "choosing") return choosingFamily(lo, hi);
  throw std::out_of_range("unknown family: " + family);
}

}  // namespace tchess
