// Compiler from choosing-nodes-from-Z games to kings-and-pawns positions:
// pawn chains, the pawn king chamber, binary nodes, crossings, Z-components,
// tree layout, and the full assembly.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tchess/bishop.hpp"  // SchematicPosition / Placement / window
#include "tchess/core.hpp"
#include "tchess/games.hpp"
#include "tchess/stencil.hpp"

namespace tchess {

// A pawn chain path: the squares of the black pawns, listed south to north,
// consecutive squares differing by (+-1, +1). The last square is the base.
struct ChainPath {
  std::vector<Square> squares;
};

// Throws std::invalid_argument naming the first offending pair if the path is
// not a valid chain (consecutive steps, strictly ascending ranks).
void validate_chain_path(const ChainPath& path);

// Black pawns on the path squares, a white blockader directly south of each.
// If `activated` is set, the black pawn at that index is removed. The result
// is a free-standing stencil whose anchor is the southernmost grid corner, so
// placing it at center C puts cell (1,1) of its bounding box at C.
Stencil make_pawn_chain(const ChainPath& path,
                        std::optional<int> activated = std::nullopt);

// Same, but expressed directly in global coordinates: returns the stencil and
// the center at which to place it so the pawns land on `path`.
std::pair<Stencil, Square> chain_segment(const ChainPath& path,
                                         std::optional<int> activated = std::nullopt);

enum class PawnStencilName {
  PawnKingChamber,
  BinaryNode,
  CrossingPristine,
  CrossingInUse,
  ZComponentPristine,
  ZComponentActivated,
  RootDeadEnd,
};

// Registry-backed for the primitive figures; the in-use crossing and the
// activated Z-component are derived (the latter by replaying the scripted
// exchange) and cached.
const Stencil& pawn_stencil(PawnStencilName name);

// ------------------------------------------------------------------ layout

struct PawnTreeLayout {
  int depthFileOffset = 2;   // leftmost node of depth d+1 sits at least this
                             // many files right of the rightmost of depth d
  int sameDepthStride = 12;  // file distance between same-depth nodes
  // Apex square (the overlap point of the two arm chains) per tree node, for
  // the complete binary tree to the requested depth, root first.
  std::map<NodeSeq, Square> nodeAnchors;
  std::vector<int> rowRank;  // apex rank per depth (index 0 = root)
};

// Deterministic layout of the complete binary tree to `depthLimit`. Row gaps
// are widened until every child-to-parent chain fits its horizontal span.
PawnTreeLayout pawn_tree_layout(int depthLimit, int sameDepthStride = 12);

// --------------------------------------------------------------- assembly

// The finite schematic for the game "Black names nodes of the complete binary
// tree; Black wins if the named set is a chain of Z". Black to move. The king
// chamber sits above the tree; its deciding chains continue diagonally
// downward indefinitely. Nodes without Z-descendants are omitted; every
// Z-node's parent edge carries a pristine Z-component. Throws if Z has
// support deeper than depthLimit.
SchematicPosition compile_pawn(const ZSet& z, int depthLimit);

// Diagnostic/geometry info for a compiled instance (frozen by tests).
struct PawnCompileInfo {
  PawnTreeLayout layout;
  Square chamberBase;                  // global square of the chamber's f9
  std::vector<Square> zComponentMoves; // the b5-push origin squares, sorted
  Rect bounds;                         // bounding box of materialized pieces
};
PawnCompileInfo compile_pawn_info(const ZSet& z, int depthLimit);

}  // namespace tchess
