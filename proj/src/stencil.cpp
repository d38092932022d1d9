#include "tchess/stencil.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace tchess {

namespace {

char pieceGlyph(Piece p) {
  char c = '?';
  switch (p.kind) {
    case Kind::Pawn: c = 'P'; break;
    case Kind::Knight: c = 'N'; break;
    case Kind::Bishop: c = 'B'; break;
    case Kind::Rook: c = 'R'; break;
    case Kind::Queen: c = 'Q'; break;
    case Kind::King: c = 'K'; break;
  }
  if (p.color == Color::Black) c = static_cast<char>(std::tolower(c));
  return c;
}

bool glyphPiece(char c, Piece& out) {
  Color col = std::isupper(static_cast<unsigned char>(c)) ? Color::White : Color::Black;
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'P': out = {col, Kind::Pawn}; return true;
    case 'N': out = {col, Kind::Knight}; return true;
    case 'B': out = {col, Kind::Bishop}; return true;
    case 'R': out = {col, Kind::Rook}; return true;
    case 'Q': out = {col, Kind::Queen}; return true;
    case 'K': out = {col, Kind::King}; return true;
    default: return false;
  }
}

Square parseGridSquare(const std::string& s) {
  auto sq = square_from_string(s);
  if (!sq) throw std::runtime_error("stencil_parse: bad square " + s);
  return *sq;
}

}  // namespace

std::map<Square, Piece> Stencil::place(Square center) const {
  std::map<Square, Piece> out;
  for (const auto& [sq, pc] : cells) out.emplace(toGlobal(sq, center), pc);
  return out;
}

Square Stencil::toGlobal(Square grid, Square center) const {
  return Square{grid.file - anchor.file + center.file,
                grid.rank - anchor.rank + center.rank};
}

Square Stencil::portGlobal(const std::string& port, Square center) const {
  auto it = ports.find(port);
  if (it == ports.end())
    throw std::runtime_error("stencil " + name + ": no port named " + port);
  return toGlobal(it->second, center);
}

Stencil Stencil::verticalFlipColorSwap(int axis, const std::string& newName) const {
  Stencil out;
  out.name = newName;
  out.width = width;
  int maxRank = 0;
  for (const auto& [sq, pc] : cells) {
    Piece flipped{pc.color == Color::White ? Color::Black : Color::White, pc.kind};
    Square nsq{sq.file, axis - sq.rank};
    if (nsq.rank < 1) throw std::runtime_error("verticalFlipColorSwap: rank underflow");
    maxRank = std::max(maxRank, nsq.rank);
    out.cells.emplace(nsq, flipped);
  }
  out.height = std::max(height, maxRank);
  out.anchor = Square{anchor.file, axis - anchor.rank};
  for (const auto& [k, v] : ports) out.ports.emplace(k, Square{v.file, axis - v.rank});
  out.meta = meta;
  for (const auto& tok : mainline) out.mainline.push_back(flip_san_token(tok, axis));
  return out;
}

Stencil Stencil::horizontalMirror(int axis, const std::string& newName) const {
  Stencil out;
  out.name = newName;
  out.height = height;
  int maxFile = 0;
  for (const auto& [sq, pc] : cells) {
    Square nsq{axis - sq.file, sq.rank};
    if (nsq.file < 1) throw std::runtime_error("horizontalMirror: file underflow");
    maxFile = std::max(maxFile, nsq.file);
    out.cells.emplace(nsq, pc);
  }
  out.width = std::max(width, maxFile);
  out.anchor = Square{axis - anchor.file, anchor.rank};
  for (const auto& [k, v] : ports) out.ports.emplace(k, Square{axis - v.file, v.rank});
  out.meta = meta;
  return out;  // main lines do not transfer across a mirror
}

std::string flip_san_token(const std::string& token, int axis) {
  if (token == "pass") return token;
  std::string core = token;
  std::string suffix;
  while (!core.empty() && (core.back() == '+' || core.back() == '#' ||
                           core.back() == '!' || core.back() == '?')) {
    suffix.insert(suffix.begin(), core.back());
    core.pop_back();
  }
  // Locate the trailing digits (the rank of the destination square).
  size_t end = core.size();
  size_t digStart = end;
  while (digStart > 0 && std::isdigit(static_cast<unsigned char>(core[digStart - 1])))
    --digStart;
  if (digStart == end)
    throw std::runtime_error("flip_san_token: no destination rank in " + token);
  int rank = std::stoi(core.substr(digStart));
  int flipped = axis - rank;
  if (flipped < 1) throw std::runtime_error("flip_san_token: rank underflow in " + token);
  return core.substr(0, digStart) + std::to_string(flipped) + suffix;
}

std::string stencil_serialize(const Stencil& s) {
  std::ostringstream os;
  os << "format=1\n";
  os << "name=" << s.name << "\n";
  os << "size=" << s.width << "x" << s.height << "\n";
  os << "anchor=" << square_to_string(s.anchor) << "\n";
  for (const auto& [k, v] : s.ports)
    os << "port " << k << "=" << square_to_string(v) << "\n";
  for (const auto& [k, v] : s.meta) os << "meta " << k << "=" << v << "\n";
  if (!s.mainline.empty()) {
    os << "mainline=";
    for (size_t i = 0; i < s.mainline.size(); ++i) {
      if (i) os << ' ';
      os << s.mainline[i];
    }
    os << "\n";
  }
  os << "grid:\n";
  for (int r = s.height; r >= 1; --r) {
    for (int f = 1; f <= s.width; ++f) {
      auto it = s.cells.find(Square{f, r});
      os << (it == s.cells.end() ? '.' : pieceGlyph(it->second));
    }
    os << "\n";
  }
  return os.str();
}

Stencil stencil_parse(const std::string& text) {
  Stencil s;
  std::istringstream is(text);
  std::string line;
  bool inGrid = false;
  std::vector<std::string> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (inGrid) {
      if (!line.empty()) rows.push_back(line);
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (line == "grid:") {
      inGrid = true;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("stencil_parse: bad line: " + line);
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "format") {
      if (val != "1") throw std::runtime_error("stencil_parse: unsupported format " + val);
    } else if (key == "name") {
      s.name = val;
    } else if (key == "size") {
      auto x = val.find('x');
      if (x == std::string::npos) throw std::runtime_error("stencil_parse: bad size " + val);
      s.width = std::stoi(val.substr(0, x));
      s.height = std::stoi(val.substr(x + 1));
    } else if (key == "anchor") {
      s.anchor = parseGridSquare(val);
    } else if (key.rfind("port ", 0) == 0) {
      s.ports[key.substr(5)] = parseGridSquare(val);
    } else if (key.rfind("meta ", 0) == 0) {
      s.meta[key.substr(5)] = val;
    } else if (key == "mainline") {
      std::istringstream ts(val);
      std::string tok;
      while (ts >> tok) s.mainline.push_back(tok);
    } else {
      throw std::runtime_error("stencil_parse: unknown key " + key);
    }
  }
  if (static_cast<int>(rows.size()) != s.height)
    throw std::runtime_error("stencil_parse: expected " + std::to_string(s.height) +
                             " grid rows, got " + std::to_string(rows.size()));
  for (int i = 0; i < s.height; ++i) {
    const std::string& row = rows[i];
    if (static_cast<int>(row.size()) != s.width)
      throw std::runtime_error("stencil_parse: row width mismatch");
    int rank = s.height - i;
    for (int f = 1; f <= s.width; ++f) {
      char c = row[f - 1];
      if (c == '.') continue;
      Piece p;
      if (!glyphPiece(c, p))
        throw std::runtime_error(std::string("stencil_parse: bad glyph ") + c);
      s.cells.emplace(Square{f, rank}, p);
    }
  }
  return s;
}

// Built-ins are defined in stencil_data.cpp.
const std::map<std::string, Stencil>& builtin_stencils();

const Stencil& stencil_registry(const std::string& name) {
  static std::map<std::string, Stencil> overrides;
  static std::mutex m;
  if (const char* dir = std::getenv("TCHESS_STENCIL_DIR")) {
    std::string path = std::string(dir) + "/" + name + ".stencil";
    std::ifstream f(path);
    if (f) {
      std::ostringstream buf;
      buf << f.rdbuf();
      std::lock_guard<std::mutex> lk(m);
      auto [it, _] = overrides.insert_or_assign(name, stencil_parse(buf.str()));
      return it->second;
    }
  }
  const auto& b = builtin_stencils();
  auto it = b.find(name);
  if (it == b.end()) throw std::runtime_error("unknown stencil: " + name);
  return it->second;
}

std::vector<std::string> stencil_names() {
  std::vector<std::string> out;
  for (const auto& [k, _] : builtin_stencils()) out.push_back(k);
  return out;
}

}  // namespace tchess
