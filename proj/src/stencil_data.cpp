// Built-in stencils: the piece patterns for every gadget used by the two
// compilers, in grid coordinates with anchors and ports.
#include <sstream>
#include <stdexcept>

#include "tchess/stencil.hpp"

namespace tchess {

namespace {

void addAll(Stencil& s, Color c, Kind k, const std::string& squares) {
  std::istringstream is(squares);
  std::string tok;
  while (is >> tok) {
    auto sq = square_from_string(tok);
    if (!sq) throw std::runtime_error("bad stencil square " + tok);
    if (!s.cells.emplace(*sq, Piece{c, k}).second)
      throw std::runtime_error("duplicate stencil square " + tok + " in " + s.name);
  }
}

Square at(const std::string& t) {
  auto sq = square_from_string(t);
  if (!sq) throw std::runtime_error("bad square " + t);
  return *sq;
}

std::vector<std::string> toks(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

// --- Bishop-compiler stencils -----------------------------------------------

// A "black node" junction: the traveling white bishop arrives from the
// south-west along the solid entry diagonal (local x-y = -4), chased by a
// black bishop one step behind. The scripted 27-ply line walks it through the
// zugzwang complex; the freed black bishop exits south-east along the dashed
// diagonal (local x+y = 22). The dotted mate diagonal (local x+y = 18,
// through g11) leads north-west toward the black king far away.
Stencil blackNode() {
  Stencil s;
  s.name = "black-node";
  s.width = 16;
  s.height = 22;
  s.anchor = at("i13");
  addAll(s, Color::White, Kind::Pawn,
         "h10 i5 i8 i2 f16 f17 f18 f21 d16 d18 b18 b20 d20 k6");
  addAll(s, Color::White, Kind::Bishop, "e17 c19");
  addAll(s, Color::Black, Kind::Pawn,
         "h11 i3 i6 i7 i9 f19 f22 d17 d19 b19 b21 d21 k7 k8 k9");
  addAll(s, Color::Black, Kind::Bishop, "j8");
  s.ports["traveler"] = at("b6");   // scripted-line start of the white bishop
  s.ports["chaser"] = at("a5");     // black chaser, one step behind on entry
  s.ports["node"] = at("i13");
  s.ports["mateAnchor"] = at("g11");  // dotted diagonal passes through here
  s.ports["exit"] = at("p6");         // dashed exit diagonal, SE corner
  s.meta["entry-diag"] = "x-y=-4";
  s.meta["exit-diag"] = "x+y=22";
  s.meta["dotted-diag"] = "x+y=18";
  s.meta["first-to-move"] = "white";
  s.mainline = toks(
      "Bg11 Bxg11 hxg11 h10 g12 h9 g13 h8 g14 h7 g15 h6 g16 hxi5 g17 i4 "
      "g18 i5 gxf19 i6 f20 Bi7 f19 Bk5 f18 Bn8 f17");
  return s;
}

// The white node is the vertical flip (about rank 13) of the black node with
// colors swapped: the traveling black bishop arrives from the north-west and
// the freed white bishop exits north-east.
Stencil whiteNode() {
  Stencil s = blackNode().verticalFlipColorSwap(26, "white-node");
  s.meta["entry-diag"] = "x+y=22";
  s.meta["exit-diag"] = "x-y=-4";
  s.meta["dotted-diag"] = "x-y=-8";
  s.meta["first-to-move"] = "black";
  return s;
}

// The start node: a white bishop shuttling on the root diagonal (the game
// starts when it commits to the arrow toward the first junction). The black
// bishop on e5 watches the arrow diagonal; the entombed c5 bishop and the
// pawn shell freeze everything else.
Stencil startNode() {
  Stencil s;
  s.name = "start-node";
  s.width = 8;
  s.height = 8;
  s.anchor = at("f6");
  addAll(s, Color::White, Kind::Bishop, "f6");
  addAll(s, Color::White, Kind::Pawn, "d5 e6 g4 b3 b5 d3 f7 h5");
  addAll(s, Color::Black, Kind::Bishop, "e5 c5");
  addAll(s, Color::Black, Kind::Pawn, "d6 e7 g5 b4 b6 d4 f8 h6");
  s.ports["node"] = at("f6");
  s.meta["arrow-diag"] = "x-y=0";  // through f6 toward the north-east
  s.meta["first-to-move"] = "white";
  return s;
}

// Both king chambers plus the shared double cage holding the two
// stalemate-prevention bishops (grid c3/c4, each with exactly one legal move
// at all times). The black king sits on the grid diagonal leading north-east
// to k9 (its open mate ray); the white king's open mate ray runs south-east
// through m1. Anchored so the kings land on the intended global diagonals.
Stencil kingChamber() {
  Stencil s;
  s.name = "king-chamber";
  s.width = 16;
  s.height = 14;
  s.anchor = at("h6");
  addAll(s, Color::Black, Kind::King, "j8");
  addAll(s, Color::White, Kind::King, "l2");
  // black king wall
  addAll(s, Color::Black, Kind::Pawn, "i9 j9 l9 i8 k8 i7 k7");
  addAll(s, Color::White, Kind::Pawn, "l8 i6 k6");
  // white king wall (vertical flip of the black wall, colors swapped)
  addAll(s, Color::White, Kind::Pawn, "k1 l1 n1 k2 m2 k3 m3");
  addAll(s, Color::Black, Kind::Pawn, "n2 k4 m4");
  // shared double cage: each bishop shuttles on exactly one square pair
  addAll(s, Color::White, Kind::Bishop, "c3");  // shuttles c3 <-> b4
  addAll(s, Color::Black, Kind::Bishop, "c4");  // shuttles c4 <-> b5
  addAll(s, Color::Black, Kind::Pawn, "b3 d3 d5 a4 a6 c6");
  addAll(s, Color::White, Kind::Pawn, "b2 d2 d4 a3 a5 c5");
  s.ports["blackKing"] = at("j8");
  s.ports["whiteKing"] = at("l2");
  s.ports["mateRayBlack"] = at("k9");  // first square of BK's open NE ray
  s.ports["mateRayWhite"] = at("m1");  // first square of WK's open SE ray
  s.meta["black-king-diag"] = "x-y=-2";  // grid coords; global x-y=-50
  s.meta["white-king-diag"] = "x+y=14";  // grid coords; global x+y=-50
  return s;
}

// --- Pawn-compiler stencils --------------------------------------------------

// Z-component: a frozen zig-zag complex in which Black has exactly one legal
// pawn move (b5, "naming" the next integer); after the scripted exchange the
// complex re-freezes with one White spare tempo (b6).
Stencil zComponent() {
  Stencil s;
  s.name = "z-component";
  s.width = 8;
  s.height = 15;
  s.anchor = at("b6");
  addAll(s, Color::Black, Kind::Pawn, "b6 c5 c8 d9 e10 f11 e12 d13 g10 h9 g13 g14 g15");
  addAll(s, Color::White, Kind::Pawn, "c3 c4 c7 d8 e9 f10 e11 d12 g9 h8 g12");
  s.ports["name"] = at("b5");
  // The long chain enters from below-right and leaves above-left; `in` and
  // `out` are the first chain squares beyond the figure on either side.
  s.ports["in"] = Square{9, 8};
  s.ports["out"] = Square{3, 14};
  s.ports["junction"] = at("f11");
  s.meta["first-to-move"] = "black";
  s.mainline = toks("b5 cxb5 c4 b6");
  return s;
}

// Binary (choice) node for the pawn-tree router: two frozen guard chains form
// a wedge with the apex on the f-file; a white pawn entering from below on
// the f-file is steered by capture choices.
Stencil binaryNode() {
  Stencil s;
  s.name = "binary-node";
  s.width = 11;
  s.height = 13;
  s.anchor = at("f8");
  addAll(s, Color::Black, Kind::Pawn,
         "a3 b4 c5 d6 e7 k3 j4 i5 h6 g7 f8 e9 d10 c11 b12 a13");
  addAll(s, Color::White, Kind::Pawn,
         "a2 b3 c4 d5 e6 k2 j3 i4 h5 g6 f7 e8 d9 c10 b11 a12");
  s.ports["apex"] = at("f8");
  // First chain squares beyond the figure: below each arm and above the exit.
  s.ports["leftChain"] = Square{0, 2};
  s.ports["rightChain"] = Square{12, 2};
  s.ports["exitChain"] = Square{0, 14};
  return s;
}

// Crossing gadget: lets a climbing white pawn pass vertically through a long
// frozen diagonal chain without opening it. Pristine state below; the in-use
// variant is built by the compiler after a pawn has traversed it.
Stencil crossing() {
  Stencil s;
  s.name = "crossing";
  s.width = 8;
  s.height = 13;
  s.anchor = at("f6");
  addAll(s, Color::Black, Kind::Pawn, "c7 d8 e9 f10 g11 h12");
  addAll(s, Color::White, Kind::Pawn, "c6 d7 e8 f9 g10 h11");
  addAll(s, Color::White, Kind::Pawn, "f5 f6 g2 g3 g4");
  addAll(s, Color::Black, Kind::Pawn, "f7 g5");
  s.ports["entry"] = at("f1");
  s.ports["target"] = at("f13");
  return s;
}

// Pawn king chamber: both kings walled in by pawn chains; the open approach
// diagonals (x-y=-1 and x+y=13 in grid coords) let an attacking pawn climb
// toward f10 and deliver mate on the black king at g11, or mirror-wise
// toward the white king at h9.
Stencil pawnKingChamber() {
  Stencil s;
  s.name = "pawn-king-chamber";
  s.width = 10;
  s.height = 13;
  s.anchor = at("f9");
  addAll(s, Color::Black, Kind::King, "g11");
  addAll(s, Color::White, Kind::King, "h9");
  addAll(s, Color::White, Kind::Pawn,
         "g9 g10 h11 e11 e12 i8 i10 j9 f8 e7 d6 c5 b4 a3 g7 h6 i5 j4");
  addAll(s, Color::Black, Kind::Pawn,
         "h12 e13 i9 i11 j10 f9 e8 d7 c6 b5 a4 g8 h7 i6 j5");
  s.ports["blackKing"] = at("g11");
  s.ports["whiteKing"] = at("h9");
  s.ports["mate"] = at("f10");
  s.meta["approach-black"] = "x-y=-1";  // empty squares a2..f7
  s.meta["approach-white"] = "x+y=13";  // empty squares j3..g6
  // First squares of the deciding chains' downward continuations.
  s.ports["chain1Cont"] = Square{0, 3};
  s.ports["chain2Cont"] = Square{11, 4};
  return s;
}

// Dead end above the root: a lone black pawn posted behind a chain base
// square catches any white pawn that climbs all the way up.
Stencil rootDeadEnd() {
  Stencil s;
  s.name = "root-dead-end";
  s.width = 1;
  s.height = 1;
  s.anchor = {1, 1};
  s.cells[{1, 1}] = Piece{Color::Black, Kind::Pawn};
  return s;
}

}  // namespace

const std::map<std::string, Stencil>& builtin_stencils();

const std::map<std::string, Stencil>& builtin_stencils() {
  static const std::map<std::string, Stencil> reg = [] {
    std::map<std::string, Stencil> m;
    for (Stencil s : {blackNode(), whiteNode(), startNode(), kingChamber(),
                      zComponent(), binaryNode(), crossing(), pawnKingChamber(),
                      rootDeadEnd()})
      m.emplace(s.name, std::move(s));
    return m;
  }();
  return reg;
}

}  // namespace tchess
