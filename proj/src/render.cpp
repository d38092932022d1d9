#include "tchess/render.hpp"

#include <cctype>
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

void checkArea(const Rect& r, long long maxCells) {
  long long w = static_cast<long long>(r.hi.file) - r.lo.file + 1;
  long long h = static_cast<long long>(r.hi.rank) - r.lo.rank + 1;
  if (w <= 0 || h <= 0 || w * h > maxCells)
    throw std::invalid_argument("render: region too large or empty");
}

}  // namespace

std::string render_ascii(const Position& pos, long long maxCells) {
  const Rect& r = pos.region();
  checkArea(r, maxCells);
  std::string out;
  out.reserve(static_cast<size_t>((r.hi.file - r.lo.file + 2) *
                                  (r.hi.rank - r.lo.rank + 1)));
  for (int rank = r.hi.rank; rank >= r.lo.rank; --rank) {
    for (int file = r.lo.file; file <= r.hi.file; ++file) {
      auto p = pos.pieceAt({file, rank});
      out.push_back(p ? pieceGlyph(*p) : '.');
    }
    out.push_back('\n');
  }
  return out;
}

std::string render_svg(const Position& pos, const SvgOptions& opt,
                       long long maxCells) {
  const Rect& r = pos.region();
  checkArea(r, maxCells);
  const int cs = opt.cellSize;
  const int w = (r.hi.file - r.lo.file + 1) * cs;
  const int h = (r.hi.rank - r.lo.rank + 1) * cs;
  // Square (file, rank) maps to pixel box with x growing east, y growing
  // south; rank increases upward, so the top row is r.hi.rank.
  auto px = [&](int file) { return (file - r.lo.file) * cs; };
  auto py = [&](int rank) { return (r.hi.rank - rank) * cs; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h
     << "\" fill=\"white\"/>\n";

  // checkerboard shading
  for (int rank = r.lo.rank; rank <= r.hi.rank; ++rank)
    for (int file = r.lo.file; file <= r.hi.file; ++file)
      if (((file + rank) % 2 + 2) % 2 == 0)
        os << "<rect x=\"" << px(file) << "\" y=\"" << py(rank) << "\" width=\""
           << cs << "\" height=\"" << cs << "\" fill=\"#e8e8e8\"/>\n";

  // grid lines
  for (int file = r.lo.file; file <= r.hi.file + 1; ++file)
    os << "<line x1=\"" << px(file) << "\" y1=\"0\" x2=\"" << px(file)
       << "\" y2=\"" << h << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  for (int rank = r.lo.rank; rank <= r.hi.rank + 1; ++rank)
    os << "<line x1=\"0\" y1=\"" << py(rank) + cs << "\" x2=\"" << w
       << "\" y2=\"" << py(rank) + cs << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

  // diagonal overlays: R_n is x-y=kn (northeast), L_n is x+y=kn (southeast)
  auto clampSeg = [&](double fx1, double fy1, double fx2, double fy2) {
    os << "<line x1=\"" << fx1 << "\" y1=\"" << fy1 << "\" x2=\"" << fx2
       << "\" y2=\"" << fy2
       << "\" stroke=\"#3366cc\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
  };
  for (int n : opt.overlayR) {
    // x - y = k n: passes through (lo.file, lo.file - kn) .. climbs NE
    long long c = static_cast<long long>(opt.diagonalSpacing) * n;
    // endpoints where the diagonal meets the rect edges
    double x1 = px(r.lo.file), y1 = py(static_cast<int>(r.lo.file - c)) + cs;
    double x2 = px(r.hi.file) + cs, y2 = py(static_cast<int>(r.hi.file - c));
    clampSeg(x1, y1, x2, y2);
  }
  for (int n : opt.overlayL) {
    long long c = static_cast<long long>(opt.diagonalSpacing) * n;
    double x1 = px(r.lo.file), y1 = py(static_cast<int>(c - r.lo.file));
    double x2 = px(r.hi.file) + cs, y2 = py(static_cast<int>(c - r.hi.file)) + cs;
    clampSeg(x1, y1, x2, y2);
  }

  // pieces
  for (const auto& [sq, piece] : pos.pieces()) {
    char g = pieceGlyph(piece);
    const char* fill = piece.color == Color::White ? "#222222" : "#aa2222";
    os << "<text x=\"" << px(sq.file) + cs / 2 << "\" y=\""
       << py(sq.rank) + cs - cs / 4 << "\" font-size=\"" << cs - 4
       << "\" font-family=\"monospace\" text-anchor=\"middle\" fill=\"" << fill
       << "\">" << g << "</text>\n";
  }

  // circled node markers
  for (const Square& sq : opt.circles)
    os << "<circle cx=\"" << px(sq.file) + cs / 2 << "\" cy=\""
       << py(sq.rank) + cs / 2 << "\" r=\"" << cs / 2
       << "\" fill=\"none\" stroke=\"#117711\" stroke-width=\"2\" class=\"node-marker\"/>\n";

  // labeled port markers
  for (const auto& [sq, label] : opt.ports) {
    os << "<rect x=\"" << px(sq.file) + 2 << "\" y=\"" << py(sq.rank) + 2
       << "\" width=\"" << cs - 4 << "\" height=\"" << cs - 4
       << "\" fill=\"none\" stroke=\"#cc8800\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << px(sq.file) + cs / 2 << "\" y=\"" << py(sq.rank) - 2
       << "\" font-size=\"" << cs / 2
       << "\" font-family=\"monospace\" text-anchor=\"middle\" fill=\"#cc8800\">"
       << label << "</text>\n";
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace tchess
