#include "tchess/core.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace tchess {

// ---------------------------------------------------------------- squares

std::string file_to_string(int file) {
  if (file < 1) throw std::invalid_argument("file_to_string: file < 1");
  std::string out;
  while (file > 0) {
    int r = (file - 1) % 26;
    out.push_back(static_cast<char>('a' + r));
    file = (file - 1) / 26;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string square_to_string(Square s) {
  if (s.file < 1) {
    return "(" + std::to_string(s.file) + "," + std::to_string(s.rank) + ")";
  }
  return file_to_string(s.file) + std::to_string(s.rank);
}

std::optional<Square> square_from_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '(') {
    if (text.back() != ')') return std::nullopt;
    auto comma = text.find(',');
    if (comma == std::string::npos) return std::nullopt;
    try {
      size_t usedA = 0, usedB = 0;
      std::string a = text.substr(1, comma - 1);
      std::string b = text.substr(comma + 1, text.size() - comma - 2);
      int x = std::stoi(a, &usedA);
      int y = std::stoi(b, &usedB);
      if (usedA != a.size() || usedB != b.size()) return std::nullopt;
      return Square{x, y};
    } catch (...) {
      return std::nullopt;
    }
  }
  size_t i = 0;
  long long file = 0;
  while (i < text.size() && text[i] >= 'a' && text[i] <= 'z') {
    file = file * 26 + (text[i] - 'a' + 1);
    if (file > 1'000'000'000LL) return std::nullopt;
    ++i;
  }
  if (i == 0 || i == text.size()) return std::nullopt;
  try {
    size_t used = 0;
    std::string ranks = text.substr(i);
    int rank = std::stoi(ranks, &used);
    if (used != ranks.size()) return std::nullopt;
    return Square{static_cast<int>(file), rank};
  } catch (...) {
    return std::nullopt;
  }
}

// ----------------------------------------------------------------- pieces

static const char* kKindChars = "KQRBNP";

char piece_to_char(Piece p) {
  char c = kKindChars[static_cast<int>(p.kind)];
  return p.color == Color::White ? c : static_cast<char>(std::tolower(c));
}

std::optional<Piece> piece_from_char(char c) {
  Color color = std::isupper(static_cast<unsigned char>(c)) ? Color::White : Color::Black;
  char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (int k = 0; k < 6; ++k) {
    if (kKindChars[k] == u) return Piece{color, static_cast<Kind>(k)};
  }
  return std::nullopt;
}

std::string piece_to_string(Piece p) {
  std::string s;
  s.push_back(p.color == Color::White ? 'w' : 'b');
  s.push_back(kKindChars[static_cast<int>(p.kind)]);
  return s;
}

std::optional<Piece> piece_from_string(const std::string& s) {
  if (s.size() != 2 || (s[0] != 'w' && s[0] != 'b')) return std::nullopt;
  auto p = piece_from_char(s[1]);
  if (!p || !std::isupper(static_cast<unsigned char>(s[1]))) return std::nullopt;
  p->color = s[0] == 'w' ? Color::White : Color::Black;
  return p;
}

// ------------------------------------------------------------------ moves

std::string move_to_string(const Move& m) {
  if (m.isPass) return "pass";
  return square_to_string(m.from) + "-" + square_to_string(m.to);
}

std::optional<Move> move_from_string(const std::string& s) {
  if (s == "pass") return pass_move();
  auto dash = s.find('-', 1);  // ranks are never negative at index 0 of a token
  // A '-' may also introduce a negative rank; search for a '-' that splits
  // the token into two parseable squares.
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i] != '-') continue;
    auto a = square_from_string(s.substr(0, i));
    auto b = square_from_string(s.substr(i + 1));
    if (a && b) {
      Move m;
      m.from = *a;
      m.to = *b;
      return m;
    }
  }
  (void)dash;
  return std::nullopt;
}

// --------------------------------------------------------------- geometry

namespace {

struct Dir { int df, dr; };
constexpr std::array<Dir, 4> kBishopDirs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
constexpr std::array<Dir, 4> kRookDirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
constexpr std::array<Dir, 8> kAllDirs{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
constexpr std::array<Dir, 8> kKnight{{{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}}};

int pawn_dir(Color c) { return c == Color::White ? 1 : -1; }

}  // namespace

// --------------------------------------------------------------- position

Position::Position(Variant v, Rect region, Boundary boundary, Color toMove,
                   std::map<Square, Piece> pieces, int halfmoveClock)
    : variant_(v), region_(region), boundary_(boundary), toMove_(toMove),
      pieces_(std::move(pieces)), clock_(halfmoveClock) {
  if (region_.lo.file > region_.hi.file || region_.lo.rank > region_.hi.rank) {
    throw std::invalid_argument("position: malformed region");
  }
  int kings[2] = {0, 0};
  for (const auto& [s, p] : pieces_) {
    if (!region_.contains(s)) {
      throw std::invalid_argument("position: piece outside region at " + square_to_string(s));
    }
    if (p.kind == Kind::King) ++kings[static_cast<int>(p.color)];
  }
  if (kings[0] > 1 || kings[1] > 1) {
    throw std::invalid_argument("position: more than one king of a color");
  }
  if (inCheck(other(toMove_))) {
    throw std::invalid_argument("position: side not to move is in check");
  }
  if (variant_.threefoldRule) history_[fingerprint()] = 1;
}

std::optional<Piece> Position::pieceAt(Square s) const {
  auto it = pieces_.find(s);
  if (it == pieces_.end()) return std::nullopt;
  return it->second;
}

std::optional<Square> Position::kingSquare(Color c) const {
  for (const auto& [s, p] : pieces_) {
    if (p.kind == Kind::King && p.color == c) return s;
  }
  return std::nullopt;
}

bool Position::attacks(Color by, Square target) const {
  int cap = variant_.range == Range::ShortRange ? variant_.maxDist : INT32_MAX;
  // Knight attacks.
  for (auto d : kKnight) {
    Square s{target.file + d.df, target.rank + d.dr};
    auto p = pieceAt(s);
    if (p && p->color == by && p->kind == Kind::Knight) return true;
  }
  // Pawn attacks (a pawn of color `by` on s attacks s + (+-1, pawn_dir)).
  for (int df : {-1, 1}) {
    Square s{target.file + df, target.rank - pawn_dir(by)};
    auto p = pieceAt(s);
    if (p && p->color == by && p->kind == Kind::Pawn) return true;
  }
  // King attacks.
  for (auto d : kAllDirs) {
    Square s{target.file + d.df, target.rank + d.dr};
    auto p = pieceAt(s);
    if (p && p->color == by && p->kind == Kind::King) return true;
  }
  // Slider attacks: walk each ray outward from the target.
  for (auto d : kAllDirs) {
    bool diagonal = d.df != 0 && d.dr != 0;
    Square s = target;
    for (int step = 1; step <= cap; ++step) {
      s.file += d.df;
      s.rank += d.dr;
      if (!region_.contains(s)) break;
      auto p = pieceAt(s);
      if (!p) continue;
      if (p->color == by &&
          (p->kind == Kind::Queen || (diagonal && p->kind == Kind::Bishop) ||
           (!diagonal && p->kind == Kind::Rook))) {
        return true;
      }
      break;
    }
  }
  return false;
}

bool Position::inCheck(Color c) const {
  auto k = kingSquare(c);
  if (!k) return false;
  return attacks(other(c), *k);
}

void Position::generatePieceMoves(Square from, std::vector<Move>& out) const {
  auto p = pieceAt(from);
  if (!p || p->color != toMove_) return;
  int cap = variant_.range == Range::ShortRange ? variant_.maxDist : INT32_MAX;
  auto push = [&](Square to) { out.push_back(Move{from, to, false}); };
  auto tryStep = [&](Square to) {  // single-step move or capture
    if (!region_.contains(to)) return;
    auto q = pieceAt(to);
    if (!q || q->color != p->color) push(to);
  };
  switch (p->kind) {
    case Kind::Pawn: {
      int dr = pawn_dir(p->color);
      Square fwd{from.file, from.rank + dr};
      if (region_.contains(fwd) && !pieceAt(fwd)) push(fwd);
      for (int df : {-1, 1}) {
        Square to{from.file + df, from.rank + dr};
        if (!region_.contains(to)) continue;
        auto q = pieceAt(to);
        if (q && q->color != p->color) push(to);
      }
      break;
    }
    case Kind::Knight:
      for (auto d : kKnight) tryStep(Square{from.file + d.df, from.rank + d.dr});
      break;
    case Kind::King:
      for (auto d : kAllDirs) tryStep(Square{from.file + d.df, from.rank + d.dr});
      break;
    default: {  // sliders
      const Dir* dirs;
      size_t n;
      if (p->kind == Kind::Bishop) { dirs = kBishopDirs.data(); n = 4; }
      else if (p->kind == Kind::Rook) { dirs = kRookDirs.data(); n = 4; }
      else { dirs = kAllDirs.data(); n = 8; }
      for (size_t i = 0; i < n; ++i) {
        Square s = from;
        for (int step = 1; step <= cap; ++step) {
          s.file += dirs[i].df;
          s.rank += dirs[i].dr;
          if (!region_.contains(s)) break;
          auto q = pieceAt(s);
          if (!q) { push(s); continue; }
          if (q->color != p->color) push(s);
          break;
        }
      }
    }
  }
}

bool Position::kingSafeAfter(const Move& m) const {
  // Apply the move on a scratch copy of the piece map and test for check.
  Position scratch(*this);
  scratch.history_.clear();
  if (!m.isPass) {
    auto node = scratch.pieces_.extract(m.from);
    scratch.pieces_.erase(m.to);
    node.key() = m.to;
    scratch.pieces_.insert(std::move(node));
  }
  return !scratch.inCheck(toMove_);
}

std::vector<Move> Position::legalMoves() const {
  std::vector<Move> pseudo;
  for (const auto& [s, p] : pieces_) {
    if (p.color == toMove_) generatePieceMoves(s, pseudo);
  }
  std::vector<Move> out;
  out.reserve(pseudo.size() + 1);
  auto kingSq = kingSquare(toMove_);
  bool checked = kingSq && inCheck(toMove_);
  for (const auto& m : pseudo) {
    bool needTest = false;
    if (kingSq) {
      bool kingMove = m.from == *kingSq;
      bool aligned = m.from.file == kingSq->file || m.from.rank == kingSq->rank ||
                     (m.from.file - kingSq->file == m.from.rank - kingSq->rank) ||
                     (m.from.file - kingSq->file == kingSq->rank - m.from.rank);
      needTest = checked || kingMove || aligned;
    }
    if (!needTest || kingSafeAfter(m)) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  if (variant_.blackMayPass && toMove_ == Color::Black && !checked) {
    out.push_back(pass_move());
  }
  return out;
}

bool Position::isLegal(const Move& m) const {
  if (m.isPass) {
    return variant_.blackMayPass && toMove_ == Color::Black && !inCheck(Color::Black);
  }
  std::vector<Move> pseudo;
  generatePieceMoves(m.from, pseudo);
  if (std::find(pseudo.begin(), pseudo.end(), m) == pseudo.end()) return false;
  return kingSafeAfter(m);
}

Position Position::applyMove(const Move& m) const {
  if (!isLegal(m)) {
    throw std::invalid_argument("applyMove: illegal move " + move_to_string(m));
  }
  Position next(*this);
  bool resetClock = false;
  if (!m.isPass) {
    auto moving = next.pieces_.at(m.from);
    bool capture = next.pieces_.count(m.to) > 0;
    resetClock = capture || moving.kind == Kind::Pawn;
    next.pieces_.erase(m.to);
    next.pieces_.erase(m.from);
    next.pieces_[m.to] = moving;
  }
  next.toMove_ = other(toMove_);
  next.clock_ = resetClock ? 0 : clock_ + 1;
  if (variant_.threefoldRule) next.history_[next.fingerprint()] += 1;
  return next;
}

TerminalStatus Position::terminalStatus() const {
  TerminalStatus t;
  auto moves = legalMoves();
  bool checked = inCheck(toMove_);
  bool anyNonPass = std::any_of(moves.begin(), moves.end(), [](const Move& m) { return !m.isPass; });
  if (checked && moves.empty()) {
    t.status = GameStatus::Checkmate;
    t.winner = other(toMove_);
    return t;
  }
  if (!checked && !anyNonPass) {
    // A player whose only option is to pass is stalemated.
    t.status = GameStatus::Stalemate;
    return t;
  }
  if (variant_.fiftyMoveRule && clock_ >= 100) {
    t.status = GameStatus::DrawByRule;
    t.rule = "fifty-move";
    return t;
  }
  if (variant_.threefoldRule) {
    auto it = history_.find(fingerprint());
    if (it != history_.end() && it->second >= 3) {
      t.status = GameStatus::DrawByRule;
      t.rule = "threefold";
      return t;
    }
  }
  return t;
}

std::uint64_t Position::fingerprint() const {
  auto mix = [](std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  };
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = mix(h, toMove_ == Color::White ? 11ULL : 13ULL);
  for (const auto& [s, p] : pieces_) {
    std::uint64_t v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.file)) << 32) |
                      static_cast<std::uint32_t>(s.rank);
    v = v * 0x2545F4914F6CDD1DULL + static_cast<std::uint64_t>(piece_to_char(p));
    h = mix(h, v);
  }
  return h;
}

// ---------------------------------------------------------- serialization

static std::string variant_name(const Variant& v) {
  std::string base = v.range == Range::LongRange ? "LongRange" : "ShortRange";
  if (v.blackMayPass) base += "Pass";
  return base;
}

std::string Position::serialize() const {
  std::ostringstream os;
  os << "format=1\n";
  os << "variant=" << variant_name(variant_) << "\n";
  if (variant_.range == Range::ShortRange) os << "maxDist=" << variant_.maxDist << "\n";
  os << "fifty=" << (variant_.fiftyMoveRule ? "on" : "off") << "\n";
  os << "threefold=" << (variant_.threefoldRule ? "on" : "off") << "\n";
  os << "toMove=" << (toMove_ == Color::White ? "White" : "Black") << "\n";
  os << "region=" << square_to_string(region_.lo) << " " << square_to_string(region_.hi) << "\n";
  os << "boundary=" << (boundary_ == Boundary::EmptyBeyond ? "EmptyBeyond" : "WallBeyond") << "\n";
  os << "clock=" << clock_ << "\n";
  os << "pieces=" << pieces_.size() << "\n";
  for (const auto& [s, p] : pieces_) {
    os << square_to_string(s) << " " << piece_to_string(p) << "\n";
  }
  return os.str();
}

Position Position::parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::map<std::string, std::string> kv;
  std::map<Square, Piece> pieces;
  bool inPieces = false;
  size_t expected = 0;
  auto fail = [](const std::string& why) -> Position {
    throw std::invalid_argument("position parse: " + why);
  };
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!inPieces) {
      auto eq = line.find('=');
      if (eq == std::string::npos) return fail("expected key=value: " + line);
      std::string k = line.substr(0, eq), v = line.substr(eq + 1);
      kv[k] = v;
      if (k == "pieces") {
        inPieces = true;
        expected = std::stoul(v);
      }
      continue;
    }
    auto sp = line.rfind(' ');
    if (sp == std::string::npos) return fail("bad piece line: " + line);
    auto s = square_from_string(line.substr(0, sp));
    auto p = piece_from_string(line.substr(sp + 1));
    if (!s || !p) return fail("bad piece line: " + line);
    if (pieces.count(*s)) return fail("duplicate square " + line.substr(0, sp));
    pieces[*s] = *p;
  }
  if (kv["format"] != "1") return fail("unsupported format");
  Variant v;
  std::string vn = kv["variant"];
  if (vn == "LongRange") v = Variant{Range::LongRange, 7, false};
  else if (vn == "LongRangePass") v = Variant{Range::LongRange, 7, true};
  else if (vn == "ShortRange") v = Variant{Range::ShortRange, 7, false};
  else if (vn == "ShortRangePass") v = Variant{Range::ShortRange, 7, true};
  else return fail("unknown variant " + vn);
  if (kv.count("maxDist")) v.maxDist = std::stoi(kv["maxDist"]);
  v.fiftyMoveRule = kv["fifty"] == "on";
  v.threefoldRule = kv["threefold"] == "on";
  Color toMove = kv["toMove"] == "Black" ? Color::Black : Color::White;
  if (kv["toMove"] != "White" && kv["toMove"] != "Black") return fail("bad toMove");
  std::string reg = kv["region"];
  auto sp = reg.find(' ');
  if (sp == std::string::npos) return fail("bad region");
  auto lo = square_from_string(reg.substr(0, sp));
  auto hi = square_from_string(reg.substr(sp + 1));
  if (!lo || !hi) return fail("bad region squares");
  Boundary b = kv["boundary"] == "WallBeyond" ? Boundary::WallBeyond : Boundary::EmptyBeyond;
  if (kv["boundary"] != "EmptyBeyond" && kv["boundary"] != "WallBeyond") return fail("bad boundary");
  int clock = kv.count("clock") ? std::stoi(kv["clock"]) : 0;
  if (pieces.size() != expected) return fail("piece count mismatch");
  return Position(v, Rect{*lo, *hi}, b, toMove, std::move(pieces), clock);
}

// ------------------------------------------------------------------- SAN

Move Position::resolveSan(const std::string& rawToken) const {
  std::string token = rawToken;
  while (!token.empty() && (token.back() == '+' || token.back() == '#' ||
                            token.back() == '!' || token.back() == '?')) {
    token.pop_back();
  }
  if (token == "pass") {
    Move m = pass_move();
    if (!isLegal(m)) throw std::invalid_argument("san: illegal pass");
    return m;
  }
  Kind kind = Kind::Pawn;
  size_t i = 0;
  if (!token.empty() && std::isupper(static_cast<unsigned char>(token[0]))) {
    auto p = piece_from_char(token[0]);
    if (!p) throw std::invalid_argument("san: bad piece letter in " + rawToken);
    kind = p->kind;
    i = 1;
  }
  std::string rest = token.substr(i);
  bool capture = false;
  std::string hint, destText;
  auto x = rest.find('x');
  if (x != std::string::npos) {
    capture = true;
    hint = rest.substr(0, x);
    destText = rest.substr(x + 1);
  } else {
    destText = rest;
  }
  auto dest = square_from_string(destText);
  if (!dest) throw std::invalid_argument("san: bad destination in " + rawToken);
  std::optional<int> hintFile;
  std::optional<int> hintRank;
  if (!hint.empty()) {
    auto full = square_from_string(hint);
    if (full) {
      hintFile = full->file;
      hintRank = full->rank;
    } else {
      long long f = 0;
      for (char c : hint) {
        if (c < 'a' || c > 'z') throw std::invalid_argument("san: bad hint in " + rawToken);
        f = f * 26 + (c - 'a' + 1);
      }
      hintFile = static_cast<int>(f);
    }
  }
  std::vector<Move> matches;
  for (const auto& m : legalMoves()) {
    if (m.isPass || m.to != *dest) continue;
    auto p = pieceAt(m.from);
    if (!p || p->kind != kind) continue;
    bool isCapture = pieceAt(m.to).has_value();
    if (isCapture != capture) continue;
    if (hintFile && m.from.file != *hintFile) continue;
    if (hintRank && m.from.rank != *hintRank) continue;
    matches.push_back(m);
  }
  if (matches.empty()) throw std::invalid_argument("san: no legal move matches " + rawToken);
  if (matches.size() > 1) throw std::invalid_argument("san: ambiguous token " + rawToken);
  return matches.front();
}

std::string Position::sanForMove(const Move& m) const {
  if (m.isPass) return "pass";
  auto p = pieceAt(m.from);
  if (!p) return move_to_string(m);
  bool capture = pieceAt(m.to).has_value();
  std::string dest = square_to_string(m.to);
  if (p->kind == Kind::Pawn) {
    if (!capture) return dest;
    return file_to_string(m.from.file) + "x" + dest;
  }
  std::string base;
  base.push_back(piece_to_char(Piece{Color::White, p->kind}));
  // Disambiguate with the full origin square when needed.
  int same = 0;
  for (const auto& lm : legalMoves()) {
    if (lm.isPass || lm.to != m.to) continue;
    auto q = pieceAt(lm.from);
    if (q && q->kind == p->kind) ++same;
  }
  if (same > 1) base += square_to_string(m.from);
  if (capture) base += "x";
  return base + dest;
}

Position replay_line(const Position& start, const std::vector<std::string>& sanLine) {
  Position pos = start;
  for (size_t i = 0; i < sanLine.size(); ++i) {
    try {
      pos = pos.applyMove(pos.resolveSan(sanLine[i]));
    } catch (const std::exception& e) {
      throw std::invalid_argument("ply " + std::to_string(i + 1) + " (" + sanLine[i] +
                                  "): " + e.what());
    }
  }
  return pos;
}

std::vector<std::string> split_san_line(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    // Strip leading move numbers: "12.Bi19", "1...b5".
    size_t i = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
    if (i > 0 && i < tok.size() && tok[i] == '.') {
      // Dots may be followed by a stray backslash ("2.\ hxg11" in captions).
      while (i < tok.size() && (tok[i] == '.' || tok[i] == '\\')) ++i;
      tok = tok.substr(i);
    } else if (i == tok.size()) {
      continue;  // bare move number
    }
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace tchess
