// Diagram rendering: ASCII boards in the stencil glyph set and deterministic
// SVG with grid, piece glyphs, diagonal overlays, port markers, and circled
// node markers.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tchess/core.hpp"

namespace tchess {

// One text row per rank, top rank first; '.' for empty squares; rows end with
// '\n'. Throws std::invalid_argument if the position's region is unbounded in
// the sense of exceeding `maxCells` squares.
std::string render_ascii(const Position& pos, long long maxCells = 1'000'000);

struct SvgOptions {
  int cellSize = 16;                      // pixels per square
  int diagonalSpacing = 50;               // the k parameter for R_n/L_n
  std::vector<int> overlayR, overlayL;    // draw R_n (x-y=kn) / L_n (x+y=kn)
  std::vector<std::pair<Square, std::string>> ports;  // labeled markers
  std::vector<Square> circles;            // circled node markers
};

// Deterministic SVG of the position's region. Rank increases upward.
std::string render_svg(const Position& pos, const SvgOptions& opt = {},
                       long long maxCells = 4'000'000);

}  // namespace tchess
