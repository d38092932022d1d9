#include "tchess/pawn.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>

namespace tchess {

namespace {

std::string sqs(Square s) { return square_to_string(s); }

Piece wp() { return Piece{Color::White, Kind::Pawn}; }
Piece bp() { return Piece{Color::Black, Kind::Pawn}; }

Rect inlineBounds(const Stencil& st, Square center) {
  Square lo{center.file + 1 - st.anchor.file, center.rank + 1 - st.anchor.rank};
  Square hi{lo.file + st.width - 1, lo.rank + st.height - 1};
  return Rect{lo, hi};
}

bool rectsTouch(const Rect& a, const Rect& b) {
  return a.lo.file <= b.hi.file && b.lo.file <= a.hi.file &&
         a.lo.rank <= b.hi.rank && b.lo.rank <= a.hi.rank;
}

}  // namespace

void validate_chain_path(const ChainPath& path) {
  if (path.squares.empty())
    throw std::invalid_argument("chain path: no squares");
  for (std::size_t i = 1; i < path.squares.size(); ++i) {
    Square a = path.squares[i - 1], b = path.squares[i];
    if (b.rank != a.rank + 1 || std::abs(b.file - a.file) != 1)
      throw std::invalid_argument("chain path: step " + std::to_string(i) +
                                  ": " + sqs(a) + " -> " + sqs(b) +
                                  " is not a (+-1,+1) step");
  }
}

Stencil make_pawn_chain(const ChainPath& path, std::optional<int> activated) {
  auto [st, center] = chain_segment(path, activated);
  (void)center;
  return st;
}

std::pair<Stencil, Square> chain_segment(const ChainPath& path,
                                         std::optional<int> activated) {
  validate_chain_path(path);
  if (activated &&
      (*activated < 0 || *activated >= static_cast<int>(path.squares.size())))
    throw std::invalid_argument("chain activation index out of range");
  std::map<Square, Piece> cells;  // global coordinates
  for (std::size_t i = 0; i < path.squares.size(); ++i) {
    Square s = path.squares[i];
    if (!activated || static_cast<int>(i) != *activated)
      if (!cells.emplace(s, bp()).second)
        throw std::invalid_argument("chain pawn collides at " + sqs(s));
    Square w{s.file, s.rank - 1};
    if (!cells.emplace(w, wp()).second)
      throw std::invalid_argument("chain blockader collides at " + sqs(w));
  }
  int loF = INT_MAX, loR = INT_MAX, hiF = INT_MIN, hiR = INT_MIN;
  for (const auto& [g, pc] : cells) {
    (void)pc;
    loF = std::min(loF, g.file);
    hiF = std::max(hiF, g.file);
    loR = std::min(loR, g.rank);
    hiR = std::max(hiR, g.rank);
  }
  Stencil st;
  st.name = "chain";
  st.width = hiF - loF + 1;
  st.height = hiR - loR + 1;
  st.anchor = {1, 1};
  for (const auto& [g, pc] : cells)
    st.cells[{g.file - loF + 1, g.rank - loR + 1}] = pc;
  Square base = path.squares.back();
  st.ports["base"] = {base.file - loF + 1, base.rank - loR + 1};
  return {st, Square{loF, loR}};
}

// ------------------------------------------------------------ fixed figures

const Stencil& pawn_stencil(PawnStencilName name) {
  switch (name) {
    case PawnStencilName::PawnKingChamber:
      return stencil_registry("pawn-king-chamber");
    case PawnStencilName::BinaryNode:
      return stencil_registry("binary-node");
    case PawnStencilName::CrossingPristine:
      return stencil_registry("crossing");
    case PawnStencilName::ZComponentPristine:
      return stencil_registry("z-component");
    case PawnStencilName::RootDeadEnd:
      return stencil_registry("root-dead-end");
    default:
      break;
  }
  static std::mutex mu;
  static std::map<PawnStencilName, Stencil> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;

  Stencil s;
  if (name == PawnStencilName::ZComponentActivated) {
    s = stencil_registry("z-component");
    Position pos(Variant{}, Rect{{0, 0}, {s.width + 1, s.height + 1}},
                 Boundary::EmptyBeyond, Color::Black, s.cells, 0);
    for (const auto& tok : s.mainline) pos = pos.applyMove(pos.resolveSan(tok));
    s.cells = pos.pieces();
    s.name = "z-component-activated";
    s.mainline.clear();
    s.meta["first-to-move"] = "black";
  } else {  // CrossingInUse
    s = stencil_registry("crossing");
    s.name = "crossing-in-use";
    // The traversal consumes the vertical guards; two white pawns end on f7
    // and g8 while the original f6 and g2 pawns stay on their files.
    s.cells.erase({6, 7});  // black f7, captured
    s.cells.erase({7, 5});  // black g5, captured
    s.cells.erase({7, 3});  // white g3, spent
    s.cells.erase({7, 4});  // white g4, spent
    s.cells[{6, 7}] = wp();
    s.cells[{7, 8}] = wp();
  }
  return cache.emplace(name, std::move(s)).first->second;
}

// ------------------------------------------------------------------ layout

namespace {

// Stencil-derived geometry, in offsets from a binary node's apex / relevant
// anchors. The chain continuation squares below each arm, above the exit,
// and around the Z-component are fixed by the figures.
constexpr int kArmDx = 6, kArmDy = -6;    // first chain square below an arm
constexpr int kExitDx = -6, kExitDy = 6;  // first chain square above the exit
// Z-component, placed by its `out` continuation square (global = out):
// out is stencil square c14 = (3,14); in is i8 = (9,8).
const Square kZOut{3, 14};
const Square kZIn{9, 8};
const Square kZAnchor{2, 6};  // b6
const Square kZName{2, 5};    // b5
// A Z on an edge sits with its out-square four diagonal steps below the arm
// continuation square, connected by a straight ascending run.
constexpr int kZDrop = 4;
// Vertical budget of an edge: ranks consumed between the child's exit
// continuation and the target (Z in-square, or the arm square directly).
constexpr int kEdgeBudgetZ = 22;  // 4 (drop) + 6 (Z in->out rank span) + 12
constexpr int kEdgeBudgetPlain = 12;

struct NodeInfo {
  NodeSeq seq;
  int depth = 0;
  Square apex;  // global apex (grid f8 of the binary-node stencil)
  bool isZ = false;
};

// Deterministic chain route: straight toward the target file, then a
// east-first zigzag for any remaining even rank surplus.
std::vector<Square> route_chain(Square from, Square to) {
  int dy = to.rank - from.rank;
  int dx = to.file - from.file;
  if (dy < 1 || std::abs(dx) > dy || ((dy - std::abs(dx)) % 2) != 0)
    throw std::invalid_argument("chain route infeasible: " + sqs(from) +
                                " -> " + sqs(to));
  std::vector<Square> out{from};
  Square cur = from;
  bool east = true;
  while (cur != to) {
    int remaining = to.rank - cur.rank;
    int step;
    if (cur.file != to.file)
      step = cur.file < to.file ? 1 : -1;
    else if (remaining >= 2) {
      step = east ? 1 : -1;
      east = !east;
    } else
      throw std::logic_error("chain route parity error");
    // Never zigzag past the point where the target file becomes unreachable.
    if (std::abs(to.file - (cur.file + step)) > remaining - 1) step = -step;
    cur = Square{cur.file + step, cur.rank + 1};
    out.push_back(cur);
  }
  return out;
}

struct LayoutCore {
  std::map<NodeSeq, Square> anchors;
  std::vector<int> rowRank;
};

// Files: depth rows left to right in lexicographic order; each row starts
// depthFileOffset right of the previous row's rightmost node.
LayoutCore assign_layout(const std::vector<std::vector<NodeSeq>>& byDepth,
                         int offset, int stride,
                         const std::function<bool(const NodeSeq&)>& isZ) {
  LayoutCore core;
  std::map<NodeSeq, int> file;
  int prevMax = 0;
  for (std::size_t d = 0; d < byDepth.size(); ++d) {
    int start = d == 0 ? 0 : prevMax + offset;
    int f = start;
    for (const auto& n : byDepth[d]) {
      file[n] = f;
      prevMax = f;
      f += stride;
    }
  }
  core.rowRank.assign(byDepth.size(), 0);
  for (std::size_t d = 1; d < byDepth.size(); ++d) {
    int need = 24;
    for (const auto& c : byDepth[d]) {
      NodeSeq p(c.begin(), c.end() - 1);
      bool right = c.back() != 0;
      int fp = file.at(p), fc = file.at(c);
      int armX = fp + (right ? kArmDx : -kArmDx);
      int targetX = isZ(c) ? armX - kZDrop + (kZIn.file - kZOut.file)
                           : armX;
      int dx = std::abs(targetX - (fc + kExitDx));
      int budget = isZ(c) ? kEdgeBudgetZ : kEdgeBudgetPlain;
      need = std::max(need, budget + std::max(dx, 2));
    }
    if (need % 2) ++need;
    core.rowRank[d] = core.rowRank[d - 1] - need;
  }
  for (const auto& [n, f] : file)
    core.anchors[n] = Square{f, core.rowRank[n.size()]};
  return core;
}

struct PawnBuild {
  std::vector<Placement> placements;
  std::map<Square, Piece> occupied;
  int rootFile = 0;
  Square chamberBase{};                 // global f9
  std::vector<Square> zMoves;

  void add(Placement pl) {
    const Stencil& st = placement_stencil(pl);
    for (const auto& [g, pc] : st.place(pl.center))
      if (!occupied.emplace(g, pc).second)
        throw std::runtime_error("compile_pawn: placement " + pl.stencil +
                                 " collides at " + sqs(g));
    placements.push_back(std::move(pl));
  }
  void addSegment(const std::vector<Square>& squares) {
    // Reject routes over the root corridor (the breakthrough file).
    for (const auto& s : squares)
      if (s.file == rootFile && s.rank > 0)
        throw std::runtime_error("compile_pawn: chain crosses the root "
                                 "corridor at " + sqs(s));
    auto [st, center] = chain_segment(ChainPath{squares});
    add(Placement{"chain", center, {}, std::make_shared<Stencil>(std::move(st))});
  }
  // Places a Z-component by its `out` continuation square; returns the `in`
  // continuation square. Records the naming move.
  Square addZ(Square outSq) {
    Square center{outSq.file - kZOut.file + kZAnchor.file,
                  outSq.rank - kZOut.rank + kZAnchor.rank};
    add(Placement{"z-component", center, {}, nullptr});
    zMoves.push_back(Square{center.file + kZName.file - kZAnchor.file,
                            center.rank + kZName.rank - kZAnchor.rank});
    return Square{outSq.file - kZOut.file + kZIn.file,
                  outSq.rank - kZOut.rank + kZIn.rank};
  }
};

struct PawnInstance {
  SchematicPosition pos;
  PawnCompileInfo info;
};

PawnInstance build_pawn_instance(const ZSet& z, int depthLimit) {
  if (depthLimit < 0) throw std::invalid_argument("compile_pawn: depthLimit < 0");
  for (const auto& s : z.support)
    if (static_cast<int>(s.size()) > depthLimit)
      throw std::invalid_argument("compile_pawn: Z support node " +
                                  node_to_string(s) + " deeper than depthLimit");
  auto isZ = [&z](const NodeSeq& n) {
    if (z.contains) return z.contains(n);
    return std::find(z.support.begin(), z.support.end(), n) != z.support.end();
  };

  // Materialize the root plus every prefix of a support element.
  std::set<NodeSeq> nodeSet{NodeSeq{}};
  for (const auto& s : z.support)
    for (std::size_t len = 1; len <= s.size(); ++len)
      nodeSet.insert(NodeSeq(s.begin(), s.begin() + len));
  std::vector<std::vector<NodeSeq>> byDepth(1);
  byDepth[0].push_back(NodeSeq{});
  for (const auto& n : nodeSet) {
    if (n.empty()) continue;
    if (byDepth.size() <= n.size()) byDepth.resize(n.size() + 1);
    byDepth[n.size()].push_back(n);
  }
  for (auto& row : byDepth) std::sort(row.begin(), row.end());

  PawnTreeLayout layout;
  LayoutCore core = assign_layout(byDepth, layout.depthFileOffset,
                                  layout.sameDepthStride, isZ);
  layout.nodeAnchors = core.anchors;
  layout.rowRank = core.rowRank;

  PawnBuild b;
  b.rootFile = core.anchors.at(NodeSeq{}).file;

  // Node gadgets.
  for (const auto& [n, apex] : core.anchors)
    b.add(Placement{"binary-node", apex, {}, nullptr});

  // Edges: child exit continuation up to the parent arm continuation, with a
  // pristine Z-component high on the edge when the child is a Z-node.
  for (const auto& [n, apex] : core.anchors) {
    if (n.empty()) continue;
    NodeSeq parent(n.begin(), n.end() - 1);
    Square papex = core.anchors.at(parent);
    bool right = n.back() != 0;
    Square arm{papex.file + (right ? kArmDx : -kArmDx), papex.rank + kArmDy};
    Square top{apex.file + kExitDx, apex.rank + kExitDy};
    if (isZ(n)) {
      Square zOut{arm.file - kZDrop, arm.rank - kZDrop};
      Square zIn = b.addZ(zOut);
      b.addSegment(route_chain(top, zIn));
      b.addSegment(route_chain(zOut, arm));
    } else {
      b.addSegment(route_chain(top, arm));
    }
  }

  // Dead end above the root: a short exit continuation capped by an extra
  // black pawn directly behind the base; a root Z-node marks this chain.
  {
    Square rootApex = core.anchors.at(NodeSeq{});
    Square e{rootApex.file + kExitDx, rootApex.rank + kExitDy};
    Square base;
    if (isZ(NodeSeq{})) {
      Square zIn{e.file - 2, e.rank + 2};
      b.addSegment(route_chain(e, zIn));
      Square zOut{zIn.file - kZIn.file + kZOut.file,
                  zIn.rank - kZIn.rank + kZOut.rank};
      Square placedIn = b.addZ(zOut);
      if (placedIn != zIn)
        throw std::logic_error("compile_pawn: dead-end Z misplacement");
      base = Square{zOut.file - 2, zOut.rank + 2};
      b.addSegment(route_chain(zOut, base));
    } else {
      base = Square{e.file - 2, e.rank + 2};
      b.addSegment(route_chain(e, base));
    }
    b.add(Placement{"root-dead-end", Square{base.file, base.rank + 1}, {}, nullptr});
  }

  // King chamber up and to the left; its second deciding chain descends
  // rightward and crosses the root corridor. Raise it until the three
  // relevant diagonals (chain pawns and the empty approach) clear the tree.
  const Stencil& chamber = stencil_registry("pawn-king-chamber");
  int cx = b.rootFile - 16;
  int cy = 24;
  for (int tries = 0;; ++tries) {
    if (tries > 200)
      throw std::runtime_error("compile_pawn: cannot place the king chamber");
    int s = cx + cy;  // file+rank of the second chain's black pawns
    bool conflict = false;
    for (const auto& [g, pc] : b.occupied) {
      (void)pc;
      int gs = g.file + g.rank;
      if (g.file >= cx && gs >= s - 3 && gs <= s + 1) { conflict = true; break; }
    }
    if (!conflict) break;
    cy += 2;
  }
  b.chamberBase = Square{cx, cy};
  // The breakthrough pawn marches up the root file to the approach square.
  int hitRank = cx + cy - 2 - b.rootFile;
  for (int r = 1; r < hitRank; ++r)
    if (b.occupied.count(Square{b.rootFile, r}))
      throw std::runtime_error("compile_pawn: root corridor blocked at rank " +
                               std::to_string(r));
  b.add(Placement{"pawn-king-chamber", b.chamberBase, {}, nullptr});

  std::vector<std::pair<Square, Piece>> kings;
  for (const auto& [grid, pc] : chamber.cells)
    if (pc.kind == Kind::King)
      kings.emplace_back(chamber.toGlobal(grid, b.chamberBase), pc);

  std::sort(b.placements.begin(), b.placements.end(),
            [](const Placement& a, const Placement& c) {
              return std::tie(a.center.file, a.center.rank, a.stencil) <
                     std::tie(c.center.file, c.center.rank, c.stencil);
            });
  std::sort(b.zMoves.begin(), b.zMoves.end());

  Rect bounds{{INT_MAX, INT_MAX}, {INT_MIN, INT_MIN}};
  for (const auto& [g, pc] : b.occupied) {
    (void)pc;
    bounds.lo.file = std::min(bounds.lo.file, g.file);
    bounds.lo.rank = std::min(bounds.lo.rank, g.rank);
    bounds.hi.file = std::max(bounds.hi.file, g.file);
    bounds.hi.rank = std::max(bounds.hi.rank, g.rank);
  }

  // Enumerator: the finite placements plus lazily generated 16-step chunks of
  // the two deciding chains, which continue diagonally downward forever.
  auto finite = std::make_shared<std::vector<Placement>>(b.placements);
  Square c1{cx - 5, cy - 5};  // last in-stencil pawn of chain 1 (descends left)
  Square c2{cx + 4, cy - 4};  // last in-stencil pawn of chain 2 (descends right)
  auto enumerate = [finite, c1, c2](const Rect& rect) {
    std::vector<Placement> out;
    for (const auto& pl : *finite)
      if (rectsTouch(inlineBounds(placement_stencil(pl), pl.center), rect))
        out.push_back(pl);
    auto emitChunks = [&](Square origin, int dirF, const std::string& tag) {
      // pawn t >= 1 at (origin.file + dirF*t, origin.rank - t), white below
      long long tLo = 1, tHi = -1;
      {
        long long byRankLo = (long long)origin.rank - rect.hi.rank;  // t >= ...
        long long byRankHi = (long long)origin.rank - 1 - rect.lo.rank + 1;
        long long byFileLo, byFileHi;
        if (dirF > 0) {
          byFileLo = (long long)rect.lo.file - origin.file;
          byFileHi = (long long)rect.hi.file - origin.file;
        } else {
          byFileLo = (long long)origin.file - rect.hi.file;
          byFileHi = (long long)origin.file - rect.lo.file;
        }
        tLo = std::max(1LL, std::max(byRankLo, byFileLo));
        tHi = std::min(byRankHi, byFileHi);
      }
      if (tHi < tLo) return;
      for (long long q = (tLo - 1) / 16; q * 16 + 1 <= tHi; ++q) {
        std::vector<Square> path;  // south first
        for (long long t = q * 16 + 16; t >= q * 16 + 1; --t)
          path.push_back(Square{static_cast<int>(origin.file + dirF * t),
                                static_cast<int>(origin.rank - t)});
        auto [st, center] = chain_segment(ChainPath{path});
        st.name = tag + ":" + std::to_string(q);
        out.push_back(Placement{st.name, center, {},
                                std::make_shared<Stencil>(std::move(st))});
      }
    };
    emitChunks(c1, -1, "chamber-chain1");
    emitChunks(c2, +1, "chamber-chain2");
    std::sort(out.begin(), out.end(), [](const Placement& a, const Placement& c) {
      return std::tie(a.center.file, a.center.rank, a.stencil) <
             std::tie(c.center.file, c.center.rank, c.stencil);
    });
    return out;
  };

  PawnInstance inst{
      SchematicPosition(LayoutParams{}, Color::Black, enumerate, kings),
      PawnCompileInfo{layout, b.chamberBase, b.zMoves, bounds}};
  return inst;
}

}  // namespace

PawnTreeLayout pawn_tree_layout(int depthLimit, int sameDepthStride) {
  if (depthLimit < 0)
    throw std::invalid_argument("pawn_tree_layout: depthLimit < 0");
  if (sameDepthStride < 8)
    throw std::invalid_argument(
        "pawn_tree_layout: stride below the crossing footprint minimum (8)");
  PawnTreeLayout layout;
  layout.sameDepthStride = sameDepthStride;
  std::vector<std::vector<NodeSeq>> byDepth(depthLimit + 1);
  byDepth[0].push_back(NodeSeq{});
  for (int d = 1; d <= depthLimit; ++d)
    for (const auto& p : byDepth[d - 1])
      for (int bit : {0, 1}) {
        NodeSeq c = p;
        c.push_back(bit);
        byDepth[d].push_back(c);
      }
  // Conservative: budget every edge as if it carried a Z-component.
  LayoutCore core = assign_layout(byDepth, layout.depthFileOffset,
                                  sameDepthStride,
                                  [](const NodeSeq&) { return true; });
  layout.nodeAnchors = core.anchors;
  layout.rowRank = core.rowRank;
  return layout;
}

SchematicPosition compile_pawn(const ZSet& z, int depthLimit) {
  return build_pawn_instance(z, depthLimit).pos;
}

PawnCompileInfo compile_pawn_info(const ZSet& z, int depthLimit) {
  return build_pawn_instance(z, depthLimit).info;
}

}  // namespace tchess
