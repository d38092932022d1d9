#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tchess/pawn.hpp"

using namespace tchess;

TEST_CASE("chain path validation") {
  CHECK_NOTHROW(validate_chain_path({{{3, 3}, {4, 4}, {3, 5}}}));
  CHECK_THROWS_AS(validate_chain_path({{{3, 3}, {3, 4}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_chain_path({{{3, 3}, {4, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_chain_path({{{3, 3}, {5, 4}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_chain_path({{}}), std::invalid_argument);
}

TEST_CASE("pawn chains pair a blockader below every black pawn") {
  ChainPath path{{{3, 3}, {4, 4}, {5, 5}}};
  Stencil chain = make_pawn_chain(path);
  int whites = 0, blacks = 0;
  for (const auto& [sq, p] : chain.cells)
    (p.color == Color::White ? whites : blacks)++;
  CHECK(whites == 3);
  CHECK(blacks == 3);
  // Activation removes exactly one black pawn.
  Stencil active = make_pawn_chain(path, 0);
  CHECK(active.cells.size() == 5);

  auto [seg, center] = chain_segment(path);
  auto cells = seg.place(center);
  for (const Square& s : path.squares) {
    REQUIRE(cells.count(s));
    CHECK(cells.at(s) == Piece{Color::Black, Kind::Pawn});
    Square below{s.file, s.rank - 1};
    REQUIRE(cells.count(below));
    CHECK(cells.at(below) == Piece{Color::White, Kind::Pawn});
  }
}

TEST_CASE("pawn stencil registry") {
  const Stencil& z = pawn_stencil(PawnStencilName::ZComponentPristine);
  int whites = 0, blacks = 0;
  for (const auto& [sq, p] : z.cells) (p.color == Color::White ? whites : blacks)++;
  CHECK(blacks == 13);
  CHECK(whites == 11);
  CHECK(z.mainline == std::vector<std::string>{"b5", "cxb5", "c4", "b6"});
  // The activated variant replays the exchange: one fewer black pawn.
  const Stencil& used = pawn_stencil(PawnStencilName::ZComponentActivated);
  CHECK(used.cells.size() == z.cells.size() - 1);
  CHECK_NOTHROW(pawn_stencil(PawnStencilName::CrossingInUse));
}

TEST_CASE("tree layout is complete, ordered and collision-free") {
  PawnTreeLayout layout = pawn_tree_layout(2);
  CHECK(layout.nodeAnchors.size() == 7);
  CHECK(layout.rowRank.size() == 3);
  for (const auto& [seq, sq] : layout.nodeAnchors) {
    CHECK(seq.size() <= 2);
    CHECK(sq.rank == layout.rowRank[seq.size()]);
    // Children sit strictly below their parent: the tree hangs from the
    // king chamber and grows downward.
    if (!seq.empty()) {
      NodeSeq parent(seq.begin(), seq.end() - 1);
      CHECK(sq.rank < layout.nodeAnchors.at(parent).rank);
    }
  }
  for (size_t d = 1; d < layout.rowRank.size(); ++d)
    CHECK(layout.rowRank[d] < layout.rowRank[d - 1]);
}

TEST_CASE("compiled pair instance is pristine") {
  ZSet z = z_from_support({{0}, {1}}, "pair");
  SchematicPosition sp = compile_pawn(z, 1);
  PawnCompileInfo info = compile_pawn_info(z, 1);
  CHECK(info.zComponentMoves.size() == 2);

  Position pos = window(sp, info.bounds, Boundary::EmptyBeyond).position;
  CHECK(pos.pieces().size() == 280);

  // Black's only local moves are the two naming pushes; White has none.
  Position black(pos.variant(), pos.region(), pos.boundary(), Color::Black,
                 pos.pieces(), 0);
  auto bm = black.legalMoves();
  REQUIRE(bm.size() == 2);
  std::vector<Square> pushTargets{bm[0].to, bm[1].to};
  CHECK(pushTargets == info.zComponentMoves);
  Position white(pos.variant(), pos.region(), pos.boundary(), Color::White,
                 pos.pieces(), 0);
  CHECK(white.legalMoves().empty());
}

TEST_CASE("compile_pawn rejects deep supports and keeps the chamber above") {
  ZSet z = z_from_support({{0, 1}}, "deep");
  CHECK_THROWS(compile_pawn(z, 1));
  PawnCompileInfo info = compile_pawn_info(z_from_support({{0}}, "single"), 1);
  // The chamber base overlooks the whole tree.
  for (const auto& [seq, sq] : info.layout.nodeAnchors)
    CHECK(info.chamberBase.rank > sq.rank);
}
