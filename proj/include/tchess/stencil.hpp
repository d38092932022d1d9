// Stencils: named rectangular piece patterns with an anchor square, named
// ports, and optional metadata / a scripted main line. Patterns are stored in
// grid coordinates (file 1.., rank 1..) and stamped into global coordinates
// relative to the anchor.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tchess/core.hpp"

namespace tchess {

struct Stencil {
  std::string name;
  int width = 0, height = 0;
  std::map<Square, Piece> cells;              // grid coordinates
  Square anchor{1, 1};                        // grid square mapped to the center
  std::map<std::string, Square> ports;        // named grid squares
  std::map<std::string, std::string> meta;    // free-form annotations
  std::vector<std::string> mainline;          // SAN tokens (may be empty)

  // Pieces translated so that `anchor` lands on `center` (global coords).
  std::map<Square, Piece> place(Square center) const;
  Square toGlobal(Square grid, Square center) const;
  Square portGlobal(const std::string& port, Square center) const;

  // Vertical flip about the horizontal axis rank = (height+1)/2 ... exact
  // integer flip rank' = axis - rank, with colors swapped. `axis` is the sum
  // rank + rank' preserved by the flip.
  Stencil verticalFlipColorSwap(int axis, const std::string& newName) const;
  // Mirror left-right: file' = axis - file; colors kept.
  Stencil horizontalMirror(int axis, const std::string& newName) const;
};

Stencil stencil_parse(const std::string& text);
std::string stencil_serialize(const Stencil& s);

// Built-in registry. If the environment variable TCHESS_STENCIL_DIR is set,
// <dir>/<name>.stencil overrides the built-in of the same name.
const Stencil& stencil_registry(const std::string& name);
std::vector<std::string> stencil_names();

// SAN token with every square's rank r replaced by axis - r (used to derive
// the white-node main line from the black-node one).
std::string flip_san_token(const std::string& token, int axis);

}  // namespace tchess
