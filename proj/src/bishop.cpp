#include "tchess/bishop.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tchess {

namespace {

long long v2(long long x) {  // 2-adic valuation, x > 0
  long long v = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++v;
  }
  return v;
}

int chebyshevRadius(const Stencil& s) {
  int r = 0;
  for (const auto& [sq, pc] : s.cells)
    r = std::max(r, std::max(std::abs(sq.file - s.anchor.file),
                             std::abs(sq.rank - s.anchor.rank)));
  return r;
}

const std::vector<std::string>& layoutStencilNames() {
  static const std::vector<std::string> names{"king-chamber", "start-node",
                                              "black-node", "white-node"};
  return names;
}

Rect stencilBounds(const Stencil& s, Square center) {
  Square lo = s.toGlobal(Square{1, 1}, center);
  Square hi = s.toGlobal(Square{s.width, s.height}, center);
  return Rect{lo, hi};
}

bool rectsIntersect(const Rect& a, const Rect& b) {
  return a.lo.file <= b.hi.file && b.lo.file <= a.hi.file && a.lo.rank <= b.hi.rank &&
         b.lo.rank <= a.hi.rank;
}

}  // namespace

int min_layout_k(int clearance) {
  int maxR = 0;
  for (const auto& n : layoutStencilNames())
    maxR = std::max(maxR, chebyshevRadius(stencil_registry(n)));
  int k = 2 * maxR + clearance;
  if (k % 2) ++k;  // centers lie at k*(n+m)/2, so k must be even
  return k;
}

void validate_layout(const LayoutParams& layout) {
  if (layout.k <= 0 || layout.k % 2 != 0)
    throw std::invalid_argument("layout: k must be a positive even number");
  int minK = min_layout_k(layout.clearance);
  if (layout.k < minK)
    throw std::invalid_argument("layout: k=" + std::to_string(layout.k) +
                                " below the validated minimum " + std::to_string(minK));
}

Square node_center(const BishopNodeId& id, const LayoutParams& layout) {
  long long k = layout.k;
  long long n, m;
  switch (id.kind) {
    case BishopNodeKind::Start:
      return Square{0, 0};
    case BishopNodeKind::KingChamber:
      n = -1;
      m = -1;
      break;
    case BishopNodeKind::BlackNode:
      if (id.m < 1 || id.n < 0 || v2(id.m) != id.n)
        throw std::invalid_argument(
            "black node (n,m) requires m >= 1 with v2(m) = n; got n=" +
            std::to_string(id.n) + " m=" + std::to_string(id.m));
      n = id.n;
      m = id.m;
      break;
    case BishopNodeKind::WhiteNode:
      if (id.n < 1 || id.m < 1 || v2(id.n) != id.m - 1)
        throw std::invalid_argument(
            "white node (n,m) requires n >= 1 with v2(n) = m-1; got n=" +
            std::to_string(id.n) + " m=" + std::to_string(id.m));
      n = id.n;
      m = id.m;
      break;
    default:
      throw std::invalid_argument("bad node kind");
  }
  // intersection of x-y = k*n and x+y = k*m
  long long x = k * (n + m) / 2, y = k * (m - n) / 2;
  return Square{static_cast<int>(x), static_cast<int>(y)};
}

BishopNodeId node_id_for_seq(const NodeSeq& seq) {
  if (seq.empty()) return BishopNodeId{BishopNodeKind::Start, 0, 0};
  long long r = 0;  // R index of the current white/start node
  BishopNodeId cur{BishopNodeKind::Start, 0, 0};
  for (size_t d = 0; d < seq.size(); ++d) {
    long long i = seq[d];
    if (i < 0) throw std::invalid_argument("node_id_for_seq: negative index");
    if (d % 2 == 0) {
      // White's move: black child i on R_r at L index 2^r * (2i+1)
      if (r > 40) throw std::invalid_argument("node_id_for_seq: index overflow");
      long long m = (1LL << r) * (2 * i + 1);
      cur = BishopNodeId{BishopNodeKind::BlackNode, r, m};
    } else {
      // Black's move: white child i on L_m at R index 2^(m-1) * (2i+1)
      long long m = cur.m;
      if (m > 40) throw std::invalid_argument("node_id_for_seq: index overflow");
      long long n = (1LL << (m - 1)) * (2 * i + 1);
      cur = BishopNodeId{BishopNodeKind::WhiteNode, n, m};
      r = n;
    }
  }
  return cur;
}

std::optional<NodeSeq> seq_for_node_id(const BishopNodeId& id) {
  if (id.kind == BishopNodeKind::Start) return NodeSeq{};
  if (id.kind == BishopNodeKind::KingChamber) return std::nullopt;
  NodeSeq rev;
  BishopNodeId cur = id;
  for (int guard = 0; guard < 128; ++guard) {
    if (cur.kind == BishopNodeKind::BlackNode) {
      if (cur.m < 1 || cur.n < 0 || v2(cur.m) != cur.n) return std::nullopt;
      rev.push_back(static_cast<int>((cur.m / (1LL << cur.n) - 1) / 2));
      if (cur.n == 0) {
        std::reverse(rev.begin(), rev.end());
        return rev;
      }
      // parent: the unique white node on R_n, which has L index v2(n)+1
      cur = BishopNodeId{BishopNodeKind::WhiteNode, cur.n, v2(cur.n) + 1};
    } else {
      if (cur.n < 1 || cur.m < 1 || v2(cur.n) != cur.m - 1) return std::nullopt;
      rev.push_back(static_cast<int>((cur.n / (1LL << (cur.m - 1)) - 1) / 2));
      // parent: the unique black node on L_m, which has R index v2(m)
      cur = BishopNodeId{BishopNodeKind::BlackNode, v2(cur.m), cur.m};
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------- schematic

SchematicPosition::SchematicPosition(LayoutParams layout, Color toMove,
                                     Enumerator placementsIn,
                                     std::vector<std::pair<Square, Piece>> kings)
    : layout_(layout), toMove_(toMove), enumerate_(std::move(placementsIn)),
      kings_(std::move(kings)) {}

std::vector<Placement> SchematicPosition::placementsIn(const Rect& rect) const {
  if (!enumerate_) return {};
  return enumerate_(rect);
}

const Stencil& placement_stencil(const Placement& p) {
  if (p.inlineStencil) return *p.inlineStencil;
  return stencil_registry(p.stencil);
}

std::optional<Piece> SchematicPosition::pieceAt(Square sq) const {
  for (const auto& pl : placementsIn(Rect{sq, sq})) {
    const Stencil& st = placement_stencil(pl);
    Square grid{sq.file - pl.center.file + st.anchor.file,
                sq.rank - pl.center.rank + st.anchor.rank};
    auto it = st.cells.find(grid);
    if (it != st.cells.end()) return it->second;
  }
  return std::nullopt;
}

SchematicPosition compile_bishop(const GameSpec& spec, const LayoutParams& layout) {
  validate_layout(layout);
  long long k = layout.k;

  auto presentSeq = [spec](const BishopNodeId& id) {
    auto seq = seq_for_node_id(id);
    return seq && in_reduced_tree(spec, *seq);
  };

  auto enumerate = [layout, k, presentSeq](const Rect& rect) {
    std::vector<Placement> out;
    auto tryAdd = [&](const BishopNodeId& id, const std::string& name) {
      Square c = node_center(id, layout);
      if (!rectsIntersect(stencilBounds(stencil_registry(name), c), rect)) return;
      if (id.kind == BishopNodeKind::BlackNode || id.kind == BishopNodeKind::WhiteNode)
        if (!presentSeq(id)) return;
      out.push_back(Placement{name, c, id});
    };
    tryAdd(BishopNodeId{BishopNodeKind::KingChamber, -1, -1}, "king-chamber");
    tryAdd(BishopNodeId{BishopNodeKind::Start, 0, 0}, "start-node");
    // junction candidates: diagonal indices whose stencil radius can reach rect
    long long rad = 16;  // covers every registered node stencil
    long long nLo = (rect.lo.file - rect.hi.rank - rad * 2) / k - 1;
    long long nHi = (rect.hi.file - rect.lo.rank + rad * 2) / k + 1;
    long long mLo = (rect.lo.file + rect.lo.rank - rad * 2) / k - 1;
    long long mHi = (rect.hi.file + rect.hi.rank + rad * 2) / k + 1;
    for (long long n = std::max(0LL, nLo); n <= nHi; ++n)
      for (long long m = std::max(1LL, mLo); m <= mHi; ++m) {
        if (v2(m) == n) tryAdd(BishopNodeId{BishopNodeKind::BlackNode, n, m}, "black-node");
        if (n >= 1 && v2(n) == m - 1)
          tryAdd(BishopNodeId{BishopNodeKind::WhiteNode, n, m}, "white-node");
      }
    std::sort(out.begin(), out.end(), [](const Placement& a, const Placement& b) {
      return std::tie(a.center.file, a.center.rank, a.stencil) <
             std::tie(b.center.file, b.center.rank, b.stencil);
    });
    return out;
  };

  const Stencil& kc = stencil_registry("king-chamber");
  Square kcCenter = node_center(BishopNodeId{BishopNodeKind::KingChamber, -1, -1}, layout);
  std::vector<std::pair<Square, Piece>> kings;
  for (const auto& [sq, pc] : kc.cells)
    if (pc.kind == Kind::King) kings.emplace_back(kc.toGlobal(sq, kcCenter), pc);

  return SchematicPosition(layout, Color::White, enumerate, std::move(kings));
}

WindowResult window(const SchematicPosition& schematic, const Rect& rect,
                    Boundary boundary, KingPolicy policy, const Variant& variant) {
  WindowResult result;
  result.policy = policy;
  std::map<Square, Piece> pieces;
  for (const auto& pl : schematic.placementsIn(rect)) {
    const Stencil& st = placement_stencil(pl);
    Rect bounds = stencilBounds(st, pl.center);
    bool whole = rect.contains(bounds.lo) && rect.contains(bounds.hi);
    if (!whole) result.truncated.push_back(pl.stencil + "@" + square_to_string(pl.center));
    for (const auto& [grid, pc] : st.cells) {
      Square g = st.toGlobal(grid, pl.center);
      if (rect.contains(g)) pieces.emplace(g, pc);
    }
  }
  for (const auto& [sq, pc] : schematic.kings()) {
    if (rect.contains(sq)) continue;
    result.kingsOmitted = true;
    if (policy == KingPolicy::SealedBox) {
      // Stamp the matching frozen wall complex (king plus ten pawns) from the
      // king-chamber stencil just inside the rect corner nearest the king's
      // true location: black in the north-west corner, white south-east.
      const Stencil& kc = stencil_registry("king-chamber");
      Square kingGrid = pc.color == Color::Black ? kc.ports.at("blackKing")
                                                 : kc.ports.at("whiteKing");
      Square corner = pc.color == Color::Black
                          ? Square{rect.lo.file + 2, rect.hi.rank - 2}
                          : Square{rect.hi.file - 3, rect.lo.rank + 2};
      for (const auto& [grid, wp] : kc.cells) {
        if (std::abs(grid.file - kingGrid.file) > 2 || std::abs(grid.rank - kingGrid.rank) > 2)
          continue;
        Square g{grid.file - kingGrid.file + corner.file,
                 grid.rank - kingGrid.rank + corner.rank};
        if (!rect.contains(g))
          throw std::invalid_argument("window: sealed king box does not fit the rect");
        if (!pieces.emplace(g, wp).second)
          throw std::invalid_argument("window: sealed king box overlaps pieces at " +
                                      square_to_string(g));
      }
    }
  }
  result.position = Position(variant, rect, boundary, schematic.toMove(), std::move(pieces));
  return result;
}

// -------------------------------------------------------------- stencils

namespace {

std::string pristineName(BishopStencilName n) {
  switch (n) {
    case BishopStencilName::KingChamber: return "king-chamber";
    case BishopStencilName::StartNode: return "start-node";
    case BishopStencilName::BlackNodePristine:
    case BishopStencilName::BlackNodeUsed: return "black-node";
    case BishopStencilName::WhiteNodePristine:
    case BishopStencilName::WhiteNodeUsed: return "white-node";
  }
  throw std::invalid_argument("bad stencil name");
}

bool isUsed(BishopStencilName n) {
  return n == BishopStencilName::BlackNodeUsed || n == BishopStencilName::WhiteNodeUsed;
}

Position isolatedFromStencil(const Stencil& st, int pad, const Variant& variant,
                             bool withEnterers) {
  auto cells = st.cells;
  Color first = Color::White;
  if (auto it = st.meta.find("first-to-move"); it != st.meta.end())
    first = it->second == "black" ? Color::Black : Color::White;
  if (withEnterers && st.ports.count("traveler")) {
    // the traveler is the first mover's bishop; the chaser belongs to the enemy
    cells[st.ports.at("traveler")] = Piece{first, Kind::Bishop};
    cells[st.ports.at("chaser")] = Piece{other(first), Kind::Bishop};
  }
  Rect r{Square{1 - pad, 1 - pad}, Square{st.width + pad, st.height + pad}};
  return Position(variant, r, Boundary::EmptyBeyond, first, std::move(cells));
}

Stencil makeUsed(const std::string& pristine, const std::string& usedName) {
  const Stencil& st = stencil_registry(pristine);
  Position end = replay_line(isolatedFromStencil(st, 2, Variant{}, true), st.mainline);
  Stencil used;
  used.name = usedName;
  used.width = st.width;
  used.height = st.height;
  used.anchor = st.anchor;
  used.ports = st.ports;
  used.meta = st.meta;
  used.meta["first-to-move"] = end.toMove() == Color::White ? "white" : "black";
  for (const auto& [sq, pc] : end.pieces()) used.cells.emplace(sq, pc);
  return used;
}

}  // namespace

const Stencil& bishop_stencil(BishopStencilName name) {
  if (!isUsed(name)) return stencil_registry(pristineName(name));
  static std::map<std::string, Stencil> cache;
  static std::mutex m;
  std::lock_guard<std::mutex> lk(m);
  std::string key = pristineName(name) + "-used";
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, makeUsed(pristineName(name), key)).first;
  return it->second;
}

std::vector<Move> bishop_main_line(BishopStencilName nodeKind, Square center) {
  const Stencil& st = stencil_registry(pristineName(nodeKind));
  Position pos = isolatedFromStencil(st, 2, Variant{}, true);
  std::vector<Move> out;
  for (const auto& token : st.mainline) {
    Move m = pos.resolveSan(token);
    pos = pos.applyMove(m);
    Move abs = m;
    abs.from = st.toGlobal(m.from, center);
    abs.to = st.toGlobal(m.to, center);
    out.push_back(abs);
  }
  return out;
}

Position isolated_node_position(BishopStencilName nodeKind, int pad, const Variant& variant) {
  const Stencil& st = bishop_stencil(nodeKind);
  return isolatedFromStencil(st, pad, variant, !isUsed(nodeKind));
}

}  // namespace tchess
