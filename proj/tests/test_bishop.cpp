#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tchess/bishop.hpp"

using namespace tchess;

namespace {
const LayoutParams kLayout{50, 20};
}

TEST_CASE("layout validation and minimum spacing") {
  CHECK(min_layout_k(20) == 42);
  CHECK_NOTHROW(validate_layout(kLayout));
  CHECK_THROWS_AS(validate_layout(LayoutParams{40, 20}), std::invalid_argument);
  CHECK_THROWS_AS(validate_layout(LayoutParams{51, 20}), std::invalid_argument);  // odd
}

TEST_CASE("node centers sit on their diagonal intersections") {
  // R_n: x - y = k n ; L_m: x + y = k m  =>  center (k(n+m)/2, k(m-n)/2).
  Square start = node_center({BishopNodeKind::Start, 0, 0}, kLayout);
  CHECK(start == Square{0, 0});
  Square chamber = node_center({BishopNodeKind::KingChamber, -1, -1}, kLayout);
  CHECK(chamber == Square{-50, 0});
  Square black01 = node_center({BishopNodeKind::BlackNode, 0, 1}, kLayout);
  CHECK(black01 == Square{25, 25});
  Square white11 = node_center({BishopNodeKind::WhiteNode, 1, 1}, kLayout);
  CHECK(white11 == Square{50, 0});
  // Congruence violations throw: a black node needs v2(m) = n.
  CHECK_THROWS_AS(node_center({BishopNodeKind::BlackNode, 0, 2}, kLayout),
                  std::invalid_argument);
  CHECK_THROWS_AS(node_center({BishopNodeKind::WhiteNode, 2, 1}, kLayout),
                  std::invalid_argument);
}

TEST_CASE("tree sequences map to admissible junctions and back") {
  // Black child i of the start node: (0, 2i+1); white child i of a black
  // node (0, m): (2^(m-1)(2i+1), m).
  CHECK(node_id_for_seq({0}) == BishopNodeId{BishopNodeKind::BlackNode, 0, 1});
  CHECK(node_id_for_seq({1}) == BishopNodeId{BishopNodeKind::BlackNode, 0, 3});
  CHECK(node_id_for_seq({0, 0}) == BishopNodeId{BishopNodeKind::WhiteNode, 1, 1});
  CHECK(node_id_for_seq({0, 1}) == BishopNodeId{BishopNodeKind::WhiteNode, 3, 1});
  CHECK(node_id_for_seq({}) == BishopNodeId{BishopNodeKind::Start, 0, 0});
  for (const NodeSeq& seq :
       {NodeSeq{}, NodeSeq{0}, NodeSeq{2}, NodeSeq{0, 1}, NodeSeq{1, 0, 0}}) {
    auto id = node_id_for_seq(seq);
    auto back = seq_for_node_id(id);
    REQUIRE(back.has_value());
    CHECK(*back == seq);
  }
  CHECK(!seq_for_node_id({BishopNodeKind::KingChamber, -1, -1}).has_value());
}

TEST_CASE("caption replay reproduces the used stencils") {
  for (auto kind : {BishopStencilName::BlackNodePristine,
                    BishopStencilName::WhiteNodePristine}) {
    Position pos = isolated_node_position(kind);
    const Stencil& st = bishop_stencil(kind);
    REQUIRE(st.mainline.size() == 27);
    Position end = replay_line(pos, st.mainline);
    auto usedKind = kind == BishopStencilName::BlackNodePristine
                        ? BishopStencilName::BlackNodeUsed
                        : BishopStencilName::WhiteNodeUsed;
    const Stencil& used = bishop_stencil(usedKind);
    // Every cell of the used stencil appears in the end position.
    for (const auto& [sq, piece] : used.place(used.anchor)) {
      auto got = end.pieceAt(sq);
      REQUIRE(got.has_value());
      CHECK(*got == piece);
    }
  }
}

TEST_CASE("compile produces a probe-stable schematic with both kings") {
  ExplicitGameSpec e;
  e.s1 = {{0}};
  SchematicPosition sp = compile_bishop(e.spec(), kLayout);
  CHECK(sp.kings().size() == 2);
  // The start stencil sits centered at the start node.
  const Stencil& sn = stencil_registry("start-node");
  for (const auto& [sq, piece] : sn.place(node_center({BishopNodeKind::Start, 0, 0}, kLayout))) {
    auto got = sp.pieceAt(sq);
    REQUIRE(got.has_value());
    CHECK(*got == piece);
  }
  // pieceAt is pure: repeated probes agree.
  for (int f = -60; f <= 60; f += 7)
    for (int r = -30; r <= 60; r += 11)
      CHECK(sp.pieceAt({f, r}) == sp.pieceAt({f, r}));
}

TEST_CASE("window extraction matches direct probing") {
  ExplicitGameSpec e;
  e.s1 = {{0}};
  SchematicPosition sp = compile_bishop(e.spec(), kLayout);
  Rect rect{{-10, -10}, {12, 12}};
  WindowResult w = window(sp, rect, Boundary::EmptyBeyond, KingPolicy::OmitKings);
  CHECK(w.policy == KingPolicy::OmitKings);
  for (int f = rect.lo.file; f <= rect.hi.file; ++f)
    for (int r = rect.lo.rank; r <= rect.hi.rank; ++r) {
      auto direct = sp.pieceAt({f, r});
      auto windowed = w.position.pieceAt({f, r});
      if (direct && direct->kind == Kind::King && w.kingsOmitted) continue;
      CHECK(direct == windowed);
    }
  // Sealed-box policy keeps exactly the kings the rectangle contains space
  // for; the position remains valid by construction (it did not throw).
  WindowResult sealed = window(sp, rect, Boundary::EmptyBeyond, KingPolicy::SealedBox);
  CHECK(sealed.policy == KingPolicy::SealedBox);
}

TEST_CASE("windows are deterministic") {
  ExplicitGameSpec e;
  e.s1 = {{0}, {1, 0}};
  SchematicPosition sp = compile_bishop(e.spec(), kLayout);
  Rect rect{{-30, -30}, {60, 60}};
  Position a = window(sp, rect, Boundary::EmptyBeyond).position;
  Position b = window(sp, rect, Boundary::EmptyBeyond).position;
  CHECK(a.serialize() == b.serialize());
}
