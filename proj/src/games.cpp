#include "tchess/games.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tchess {

std::string node_to_string(const NodeSeq& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

std::optional<NodeSeq> node_from_string(const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') return std::nullopt;
  NodeSeq out;
  std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return out;
  std::istringstream is(body);
  std::string piece;
  while (std::getline(is, piece, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(piece, &used));
      if (used != piece.size()) return std::nullopt;
    } catch (...) {
      return std::nullopt;
    }
  }
  return out;
}

bool is_prefix(const NodeSeq& a, const NodeSeq& b) {
  if (a.size() > b.size()) return false;
  return std::equal(a.begin(), a.end(), b.begin());
}

bool comparable(const NodeSeq& a, const NodeSeq& b) {
  return is_prefix(a, b) || is_prefix(b, a);
}

// --------------------------------------------------------------- ordinals

Ordinal Ordinal::nat(std::uint64_t n) {
  Ordinal o;
  if (n) o.terms.push_back({Ordinal{}, n});
  return o;
}

Ordinal Ordinal::omega() {
  Ordinal o;
  o.terms.push_back({nat(1), 1});
  return o;
}

bool Ordinal::isNat() const {
  return terms.empty() || (terms.size() == 1 && terms[0].first.terms.empty());
}

std::uint64_t Ordinal::asNat() const { return terms.empty() ? 0 : terms[0].second; }

Ordinal Ordinal::succ() const {
  Ordinal o = *this;
  if (!o.terms.empty() && o.terms.back().first.terms.empty()) {
    o.terms.back().second += 1;
  } else {
    o.terms.push_back({Ordinal{}, 1});
  }
  return o;
}

int Ordinal::compare(const Ordinal& o) const {
  size_t n = std::min(terms.size(), o.terms.size());
  for (size_t i = 0; i < n; ++i) {
    int c = terms[i].first.compare(o.terms[i].first);
    if (c != 0) return c;
    if (terms[i].second != o.terms[i].second) {
      return terms[i].second < o.terms[i].second ? -1 : 1;
    }
  }
  if (terms.size() == o.terms.size()) return 0;
  return terms.size() < o.terms.size() ? -1 : 1;
}

Ordinal Ordinal::sup(const std::vector<Ordinal>& xs) {
  Ordinal best;
  for (const auto& x : xs) {
    if (best < x) best = x;
  }
  return best;
}

std::string Ordinal::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& [e, c] = terms[i];
    if (i) out += "+";
    if (e.terms.empty()) {
      out += std::to_string(c);
      continue;
    }
    if (e == nat(1)) out += "w";
    else out += "w^(" + e.to_string() + ")";
    if (c != 1) out += "*" + std::to_string(c);
  }
  return out;
}

// ------------------------------------------------------- Gale-Stewart side

bool any_prefix_in(const std::function<bool(const NodeSeq&)>& S, const NodeSeq& v) {
  NodeSeq prefix;
  if (S(prefix)) return true;
  for (int m : v) {
    prefix.push_back(m);
    if (S(prefix)) return true;
  }
  return false;
}

bool is_losing_node(const GameSpec& g, const NodeSeq& v) {
  bool playerOneToMove = v.size() % 2 == 0;
  return playerOneToMove ? any_prefix_in(g.inS2, v) : any_prefix_in(g.inS1, v);
}

bool in_reduced_tree(const GameSpec& g, const NodeSeq& v) {
  NodeSeq prefix;
  for (size_t i = 0; i < v.size(); ++i) {
    if (is_losing_node(g, prefix)) return false;
    prefix.push_back(v[i]);
  }
  return true;
}

GsValue gs_value(const GameSpec& g, const NodeSeq& v, int widthBound, int depthBound,
                 int player) {
  const auto& sWin = player == 1 ? g.inS1 : g.inS2;
  const auto& sLose = player == 1 ? g.inS2 : g.inS1;
  if (any_prefix_in(sWin, v)) return {GsKind::Value, Ordinal::nat(0)};
  if (any_prefix_in(sLose, v)) return {GsKind::NoValue, {}};
  if (depthBound <= 0) return {GsKind::Truncated, {}};
  bool winnerToMove = (v.size() % 2 == 0) == (player == 1);
  NodeSeq child = v;
  child.push_back(0);
  if (winnerToMove) {
    std::optional<Ordinal> best;
    bool sawTruncated = false;
    for (int m = 0; m < widthBound; ++m) {
      child.back() = m;
      GsValue r = gs_value(g, child, widthBound, depthBound - 1, player);
      if (r.kind == GsKind::Truncated) sawTruncated = true;
      if (r.kind != GsKind::Value) continue;
      if (!best || r.value < *best) best = r.value;
      if (best->terms.empty()) break;  // min 0 cannot be beaten
    }
    if (best && best->terms.empty()) return {GsKind::Value, Ordinal::nat(1)};
    if (sawTruncated) return {GsKind::Truncated, {}};
    if (best) return {GsKind::Value, best->succ()};
    return {GsKind::NoValue, {}};
  }
  // Loser to move: value is the sup over all options; any unvalued option
  // kills the value, any truncated option leaves it unknown.
  std::vector<Ordinal> vals;
  bool sawTruncated = false;
  for (int m = 0; m < widthBound; ++m) {
    child.back() = m;
    GsValue r = gs_value(g, child, widthBound, depthBound - 1, player);
    if (r.kind == GsKind::NoValue) return {GsKind::NoValue, {}};
    if (r.kind == GsKind::Truncated) sawTruncated = true;
    else vals.push_back(r.value);
  }
  if (sawTruncated) return {GsKind::Truncated, {}};
  return {GsKind::Value, Ordinal::sup(vals)};
}

GameSpec chess_as_gs(const Position& start) {
  if (start.toMove() != Color::White) {
    throw std::invalid_argument("chess_as_gs: player one is White; start must be White to move");
  }
  // Replays v and reports who (if anyone) has won at or before its end.
  auto winnerAfter = [start](const NodeSeq& v) -> std::optional<Color> {
    Position pos = start;
    for (int idx : v) {
      auto t = pos.terminalStatus();
      if (t.status == GameStatus::Checkmate) return t.winner;
      if (t.status != GameStatus::Ongoing) return std::nullopt;  // drawn, rest ignored
      auto moves = pos.legalMoves();
      if (idx < 0 || static_cast<size_t>(idx) >= moves.size()) {
        return other(pos.toMove());  // illegal number: mover loses at once
      }
      pos = pos.applyMove(moves[idx]);
    }
    auto t = pos.terminalStatus();
    if (t.status == GameStatus::Checkmate) return t.winner;
    return std::nullopt;
  };
  GameSpec g;
  g.inS1 = [winnerAfter](const NodeSeq& v) { return winnerAfter(v) == Color::White; };
  g.inS2 = [winnerAfter](const NodeSeq& v) { return winnerAfter(v) == Color::Black; };
  return g;
}

GameSpec ExplicitGameSpec::spec() const {
  auto mk = [](std::vector<NodeSeq> list) {
    return [list = std::move(list)](const NodeSeq& v) {
      return std::find(list.begin(), list.end(), v) != list.end();
    };
  };
  return GameSpec{mk(s1), mk(s2)};
}

ExplicitGameSpec gamespec_parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  ExplicitGameSpec out;
  bool sawFormat = false, sawKind = false;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line == "format=1") { sawFormat = true; continue; }
    if (line == "kind=explicit") { sawKind = true; continue; }
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != "s1" && tag != "s2") {
      throw std::invalid_argument("gamespec parse: unexpected line: " + line);
    }
    NodeSeq seq;
    int x;
    while (ls >> x) seq.push_back(x);
    (tag == "s1" ? out.s1 : out.s2).push_back(seq);
  }
  if (!sawFormat || !sawKind) {
    throw std::invalid_argument("gamespec parse: missing format=1 / kind=explicit header");
  }
  return out;
}

std::string gamespec_serialize(const ExplicitGameSpec& g) {
  std::ostringstream os;
  os << "format=1\nkind=explicit\n";
  for (const auto& s : g.s1) {
    os << "s1";
    for (int x : s) os << " " << x;
    os << "\n";
  }
  for (const auto& s : g.s2) {
    os << "s2";
    for (int x : s) os << " " << x;
    os << "\n";
  }
  return os.str();
}

// ------------------------------------------------------- choosing from Z

std::vector<NodeSeq> omega_ladder_support(int levels) {
  std::vector<NodeSeq> out;
  for (int i = 1; i <= levels; ++i) {
    for (int j = 1; j <= i; ++j) {
      NodeSeq v(static_cast<size_t>(i - 1), 0);
      v.insert(v.end(), static_cast<size_t>(j), 1);
      out.push_back(v);
    }
  }
  return out;
}

static bool omega_ladder_contains(const NodeSeq& v) {
  if (v.empty()) return false;
  size_t i = 0;
  while (i < v.size() && v[i] == 0) ++i;
  if (i == v.size()) return false;
  size_t zeros = i;
  while (i < v.size() && v[i] == 1) ++i;
  if (i != v.size()) return false;
  size_t ones = v.size() - zeros;
  return ones >= 1 && ones <= zeros + 1;
}

ZSet z_omega_ladder() {
  ZSet z;
  z.contains = omega_ladder_contains;
  z.supportComplete = false;
  z.valueLowerBound = Ordinal::omega();
  z.name = "omega-ladder";
  return z;
}

ZSet z_omega_ladder_truncated(int levels) {
  ZSet z = z_from_support(omega_ladder_support(levels),
                          "omega-ladder<=" + std::to_string(levels));
  z.valueLowerBound = Ordinal::nat(static_cast<std::uint64_t>(levels));
  return z;
}

ZSet z_from_support(std::vector<NodeSeq> support, std::string name) {
  ZSet z;
  auto list = support;
  z.contains = [list](const NodeSeq& v) {
    return std::find(list.begin(), list.end(), v) != list.end();
  };
  z.support = std::move(support);
  z.supportComplete = true;
  z.name = std::move(name);
  return z;
}

ZSet z_succ(const ZSet& z) {
  ZSet out;
  auto inner = z.contains;
  out.contains = [inner](const NodeSeq& v) {
    if (v.size() == 1 && v[0] == 0) return true;  // the new root-side node (0)
    if (v.empty() || v[0] != 0) return false;
    return inner(NodeSeq(v.begin() + 1, v.end()));
  };
  if (z.supportComplete) {
    out.supportComplete = true;
    out.support.push_back(NodeSeq{0});
    for (auto s : z.support) {
      s.insert(s.begin(), 0);
      out.support.push_back(std::move(s));
    }
  }
  if (z.valueLowerBound) out.valueLowerBound = z.valueLowerBound->succ();
  out.name = "succ(" + z.name + ")";
  return out;
}

ZSet z_limit(const std::vector<ZSet>& zs) {
  ZSet out;
  std::vector<std::function<bool(const NodeSeq&)>> inners;
  for (const auto& z : zs) inners.push_back(z.contains);
  out.contains = [inners](const NodeSeq& v) {
    // Strip the guide prefix 0^{i-1} 1 and defer to Z_i.
    size_t zeros = 0;
    while (zeros < v.size() && v[zeros] == 0) ++zeros;
    if (zeros >= v.size() || v[zeros] != 1) return false;
    size_t i = zeros + 1;  // 1-based branch index
    if (i > inners.size()) return false;
    return inners[i - 1](NodeSeq(v.begin() + static_cast<long>(zeros) + 1, v.end()));
  };
  out.supportComplete = true;
  std::vector<Ordinal> bounds;
  out.name = "limit(";
  for (size_t i = 0; i < zs.size(); ++i) {
    if (!zs[i].supportComplete) out.supportComplete = false;
    for (auto s : zs[i].support) {
      NodeSeq g(static_cast<size_t>(i), 0);
      g.push_back(1);
      g.insert(g.end(), s.begin(), s.end());
      out.support.push_back(std::move(g));
    }
    if (zs[i].valueLowerBound) bounds.push_back(*zs[i].valueLowerBound);
    if (i) out.name += ",";
    out.name += zs[i].name;
  }
  out.name += ")";
  if (bounds.size() == zs.size() && !bounds.empty()) {
    out.valueLowerBound = Ordinal::sup(bounds);
  }
  return out;
}

ChoosingState choosing_step(const ChoosingState& s, const ZSet& z,
                            const std::optional<NodeSeq>& choice) {
  ChoosingState next = s;
  if (s.blackToMove) {
    if (!choice) throw std::invalid_argument("choosing_step: Black must name a node");
    if (!z.contains(*choice)) {
      throw std::invalid_argument("choosing_step: " + node_to_string(*choice) + " is not in Z");
    }
    if (std::find(s.named.begin(), s.named.end(), *choice) != s.named.end()) {
      throw std::invalid_argument("choosing_step: node already named");
    }
    next.named.push_back(*choice);
  } else if (choice) {
    throw std::invalid_argument("choosing_step: White's move is a fixed no-op");
  }
  next.blackToMove = !s.blackToMove;
  return next;
}

ChoosingStatus choosing_status(const ChoosingState& s, const ZSet& z) {
  for (size_t i = 0; i < s.named.size(); ++i) {
    for (size_t j = i + 1; j < s.named.size(); ++j) {
      if (!comparable(s.named[i], s.named[j])) return ChoosingStatus::WhiteWon;
    }
  }
  if (s.blackToMove && z.supportComplete) {
    bool anyFresh = false;
    for (const auto& c : z.support) {
      if (std::find(s.named.begin(), s.named.end(), c) == s.named.end()) {
        anyFresh = true;
        break;
      }
    }
    if (!anyFresh) return ChoosingStatus::BlackStuck;
  }
  return ChoosingStatus::Ongoing;
}

Ordinal choosing_value(const std::vector<NodeSeq>& support) {
  // States are chains of named nodes; value for White counts White's no-op
  // moves: Black to move takes the max over choices, the forced White reply
  // adds one. A position already won for White (incomparable pair named, or
  // Black out of fresh nodes) has value 0.
  std::map<std::vector<size_t>, std::uint64_t> memo;  // sorted index chains
  std::function<std::uint64_t(std::vector<size_t>)> blackValue =
      [&](std::vector<size_t> chain) -> std::uint64_t {
    auto it = memo.find(chain);
    if (it != memo.end()) return it->second;
    std::uint64_t best = 0;
    for (size_t k = 0; k < support.size(); ++k) {
      if (std::find(chain.begin(), chain.end(), k) != chain.end()) continue;
      bool stillChain = true;
      for (size_t j : chain) {
        if (!comparable(support[j], support[k])) {
          stillChain = false;
          break;
        }
      }
      std::uint64_t v;
      if (!stillChain) {
        v = 0;  // the position after the naming is already won for White
      } else {
        auto next = chain;
        next.push_back(k);
        std::sort(next.begin(), next.end());
        v = 1 + blackValue(next);
      }
      best = std::max(best, v);
    }
    // No fresh node at all: Black is stuck and the position counts as won.
    memo[chain] = best;
    return best;
  };
  return Ordinal::nat(blackValue({}));
}

}  // namespace tchess
