// Gadget verification: one fixture per gadget lemma, each establishing the
// lemma's conclusion on a finite window via solve / verify_forced_line /
// direct move enumeration, with a machine-readable report.
#pragma once

#include <string>
#include <vector>

#include "tchess/solver.hpp"

namespace tchess {

struct GadgetCheck {
  std::string label;
  bool passed = false;
  std::string detail;  // stable, human-readable; empty when nothing to add
};

struct GadgetReport {
  std::string fixture;
  bool passed = false;
  std::vector<GadgetCheck> checks;
  long long statesExplored = 0;

  // Stable field order: "fixture <name>", one "check <pass|FAIL> <label>
  // [detail]" line per check, then "result <pass|FAIL> states=<n>".
  std::string render() const;
};

// Registered fixture names, sorted.
std::vector<std::string> gadget_fixture_names();

// Runs one fixture; throws std::out_of_range on an unknown name.
GadgetReport verify_gadget(const std::string& fixtureName);

// ----------------------------------------------------------- value families

struct FamilyEntry {
  int parameter = 0;
  std::string value;  // ordinal / ply count rendered as text
  long long states = 0;
};

struct FamilyReport {
  std::string family;
  std::vector<FamilyEntry> entries;
  bool strictlyIncreasing = false;
};

// Families: "pawn-chain" (minimal forcing depth of the base-square
// breakthrough for a chain of the given length) and "choosing" (exact value
// of the choosing game on the ladder support truncated to the given number
// of levels). Throws std::out_of_range on an unknown family.
FamilyReport value_family(const std::string& family, int lo, int hi);

}  // namespace tchess
