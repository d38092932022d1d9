// Compiler from open games (GameSpec) to the bishop-tree schematic: diagonal
// layout, king chambers, start node, black/white node junctions, and finite
// window extraction.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tchess/core.hpp"
#include "tchess/games.hpp"
#include "tchess/stencil.hpp"

namespace tchess {

// ------------------------------------------------------------------ layout

enum class Orientation { R, L };  // R: x-y = k*n ; L: x+y = k*n

struct DiagonalIndex {
  Orientation orientation = Orientation::R;
  long long n = 0;
};

struct LayoutParams {
  int k = 50;          // diagonal spacing
  int clearance = 20;  // required empty margin between unrelated stencils
};

// Smallest even k for which every pair of placed stencils keeps `clearance`
// empty squares between their footprints (except along shared diagonals).
int min_layout_k(int clearance = 20);
void validate_layout(const LayoutParams& layout);  // throws std::invalid_argument

// ------------------------------------------------------------------- nodes

enum class BishopNodeKind { Start, KingChamber, BlackNode, WhiteNode };

struct BishopNodeId {
  BishopNodeKind kind = BishopNodeKind::Start;
  long long n = 0, m = 0;  // R index, L index (junction kinds only)
  bool operator==(const BishopNodeId&) const = default;
};

// Center of the node's diagonal intersection. Requires the kind's congruence:
// a black node (n,m) needs v2(m) = n (n >= 0, m >= 1); a white node (n,m)
// needs v2(n) = m-1 (n >= 1, m >= 1). Throws naming the violated constraint.
Square node_center(const BishopNodeId& id, const LayoutParams& layout);

// Tree-node <-> junction coordinates. A sequence of length 2d+1 (White moved
// last) is a black node; length 2d+2 a white node. The i-th child occupies
// the i-th admissible intersection outward along the parent's choice
// diagonal: black child i of a white/start node on R_r is (r, 2^r*(2i+1));
// white child i of a black node on L_m is (2^(m-1)*(2i+1), m).
BishopNodeId node_id_for_seq(const NodeSeq& seq);
std::optional<NodeSeq> seq_for_node_id(const BishopNodeId& id);

// -------------------------------------------------------------- schematic

struct Placement {
  std::string stencil;
  Square center;  // the stencil anchor maps here
  BishopNodeId id{};
  // Generated stencils (chain segments and similar) are carried inline; when
  // null, `stencil` names a registry entry.
  std::shared_ptr<const Stencil> inlineStencil = nullptr;
  bool operator==(const Placement& o) const {
    return stencil == o.stencil && center == o.center && id == o.id;
  }
};

// Resolves either the inline stencil or the registry entry.
const Stencil& placement_stencil(const Placement& p);

// A lazily evaluated infinite position: finitely many placements meet any
// bounded rectangle; pieceAt is a pure function of the square.
class SchematicPosition {
 public:
  using Enumerator = std::function<std::vector<Placement>(const Rect&)>;

  SchematicPosition() = default;
  SchematicPosition(LayoutParams layout, Color toMove, Enumerator placementsIn,
                    std::vector<std::pair<Square, Piece>> kings);

  const LayoutParams& layout() const { return layout_; }
  Color toMove() const { return toMove_; }
  std::vector<Placement> placementsIn(const Rect& rect) const;
  std::optional<Piece> pieceAt(Square sq) const;
  const std::vector<std::pair<Square, Piece>>& kings() const { return kings_; }

 private:
  LayoutParams layout_{};
  Color toMove_ = Color::White;
  Enumerator enumerate_;
  std::vector<std::pair<Square, Piece>> kings_;
};

SchematicPosition compile_bishop(const GameSpec& spec, const LayoutParams& layout);

// ---------------------------------------------------------------- windows

enum class KingPolicy { OmitKings, SealedBox };

struct WindowResult {
  Position position;
  std::vector<std::string> truncated;  // placements only partially inside
  bool kingsOmitted = false;
  KingPolicy policy = KingPolicy::OmitKings;
};

WindowResult window(const SchematicPosition& schematic, const Rect& rect,
                    Boundary boundary, KingPolicy policy = KingPolicy::OmitKings,
                    const Variant& variant = Variant{});

// --------------------------------------------------------------- stencils

enum class BishopStencilName {
  KingChamber,
  StartNode,
  BlackNodePristine,
  BlackNodeUsed,
  WhiteNodePristine,
  WhiteNodeUsed,
};

// Used variants are derived by replaying the pristine main line with the
// entering bishop and its chaser placed on their ports.
const Stencil& bishop_stencil(BishopStencilName name);

// The scripted main line translated so the stencil anchor sits at `center`;
// every move is legal in turn from the pristine isolated state.
std::vector<Move> bishop_main_line(BishopStencilName nodeKind, Square center);

// The pristine isolated node position used for caption replay and the race
// fixtures: stencil cells plus the entering bishop and chaser on their ports,
// in grid coordinates, with `pad` empty squares around the grid.
Position isolated_node_position(BishopStencilName nodeKind, int pad = 2,
                                const Variant& variant = Variant{});

}  // namespace tchess
