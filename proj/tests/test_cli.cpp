#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tchess/cli.hpp"
#include "tchess/core.hpp"

namespace fs = std::filesystem;
using namespace tchess;

namespace {

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "tchess-cli-tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << text;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("tchess");
  for (const auto& s : args) argv.push_back(s.c_str());
  return cli_run(static_cast<int>(argv.size()), argv.data());
}

size_t countChar(const std::string& s, char c) {
  size_t n = 0;
  for (char x : s)
    if (x == c) ++n;
  return n;
}

size_t countSub(const std::string& s, const std::string& sub) {
  size_t n = 0, at = 0;
  while ((at = s.find(sub, at)) != std::string::npos) {
    ++n;
    at += sub.size();
  }
  return n;
}

}  // namespace

TEST_CASE("render ascii of an empty region") {
  Position empty(Variant{}, Rect{{0, 0}, {2, 2}}, Boundary::EmptyBeyond,
                 Color::White, {}, 0);
  fs::path posFile = scratch() / "empty.pos";
  fs::path outFile = scratch() / "empty.txt";
  spit(posFile, empty.serialize());
  CHECK(run({"render", "--pos", posFile.string(), "--format", "ascii", "--out",
             outFile.string()}) == 0);
  CHECK(slurp(outFile) == "...\n...\n...\n");
}

TEST_CASE("compile-bishop, window, render round trip") {
  fs::path specFile = scratch() / "game.spec";
  fs::path schFile = scratch() / "game.schematic";
  fs::path posFile = scratch() / "game.pos";
  fs::path artFile = scratch() / "game.txt";
  spit(specFile, "format=1\nkind=explicit\ns1 0\n");
  CHECK(run({"compile-bishop", "--spec", specFile.string(), "--k", "50",
             "--clearance", "20", "--out", schFile.string()}) == 0);
  std::string schematic = slurp(schFile);
  CHECK(schematic.find("kind=bishop-schematic") != std::string::npos);
  CHECK(schematic.find("k=50") != std::string::npos);
  CHECK(schematic.find("s1 0") != std::string::npos);

  // A window that misses both king chambers, sealed: the walls stamped into
  // the corners hold exactly one king per side.
  CHECK(run({"window", "--in", schFile.string(), "--rect", "-10", "-10", "12",
             "12", "--kings", "sealed", "--out", posFile.string()}) == 0);
  CHECK(run({"render", "--pos", posFile.string(), "--format", "ascii", "--out",
             artFile.string()}) == 0);
  std::string art = slurp(artFile);
  CHECK(countChar(art, 'K') == 1);
  CHECK(countChar(art, 'k') == 1);

  // Importing the schematic file is deterministic: the same window twice.
  fs::path posFile2 = scratch() / "game2.pos";
  CHECK(run({"window", "--in", schFile.string(), "--rect", "-10", "-10", "12",
             "12", "--kings", "sealed", "--out", posFile2.string()}) == 0);
  CHECK(slurp(posFile) == slurp(posFile2));
}

TEST_CASE("compile-pawn schematic and window") {
  fs::path schFile = scratch() / "pair.schematic";
  fs::path posFile = scratch() / "pair.pos";
  CHECK(run({"compile-pawn", "--support", "(0) (1)", "--name", "pair",
             "--depth", "1", "--out", schFile.string()}) == 0);
  std::string schematic = slurp(schFile);
  CHECK(schematic.find("kind=pawn-schematic") != std::string::npos);
  CHECK(schematic.find("support=(0) (1)") != std::string::npos);
  CHECK(run({"window", "--in", schFile.string(), "--rect", "-40", "-40", "40",
             "10", "--boundary", "empty", "--kings", "omit", "--out",
             posFile.string()}) == 0);
  Position pos = Position::parse(slurp(posFile));
  CHECK(pos.pieces().size() > 0);
}

TEST_CASE("solve command reports a mate in one") {
  // Queen to a2 delivers mate against the cornered king.
  Position pos(Variant{}, Rect{{1, 1}, {4, 4}}, Boundary::EmptyBeyond,
               Color::White,
               {{{1, 4}, Piece{Color::Black, Kind::King}},
                {{3, 3}, Piece{Color::White, Kind::King}},
                {{4, 2}, Piece{Color::White, Kind::Queen}}},
               0);
  fs::path posFile = scratch() / "mate.pos";
  fs::path outFile = scratch() / "mate.solve";
  spit(posFile, pos.serialize());
  CHECK(run({"solve", "--pos", posFile.string(), "--objective",
             "checkmate:white", "--max-plies", "5", "--out",
             outFile.string()}) == 0);
  std::string report = slurp(outFile);
  CHECK(report.find("result=attacker-wins") != std::string::npos);
  CHECK(report.find("plies=1") != std::string::npos);
}

TEST_CASE("verify-gadget runs fixtures and signals failure modes") {
  fs::path outFile = scratch() / "gadget.txt";
  CHECK(run({"verify-gadget", "--fixture", "king-chamber-mate", "--out",
             outFile.string()}) == 0);
  std::string report = slurp(outFile);
  CHECK(report.find("fixture king-chamber-mate") != std::string::npos);
  CHECK(report.find("result pass") != std::string::npos);

  // Unknown fixture names are input errors, not verification failures.
  CHECK(run({"verify-gadget", "--fixture", "no-such-fixture"}) == 2);
}

TEST_CASE("value-family checks monotonicity") {
  fs::path outFile = scratch() / "family.txt";
  CHECK(run({"value-family", "--family", "choosing", "--n", "1..3", "--out",
             outFile.string()}) == 0);
  std::string report = slurp(outFile);
  CHECK(report.find("family=choosing") != std::string::npos);
  CHECK(report.find("monotone=strict") != std::string::npos);
  CHECK(run({"value-family", "--family", "no-such-family", "--n", "1..2"}) == 2);
}

TEST_CASE("gs-value evaluates a spec file") {
  fs::path specFile = scratch() / "win.spec";
  fs::path outFile = scratch() / "win.value";
  spit(specFile, "format=1\nkind=explicit\ns1 0\n");
  CHECK(run({"gs-value", "--spec", specFile.string(), "--node", "()",
             "--width", "2", "--depth", "4", "--player", "1", "--out",
             outFile.string()}) == 0);
  CHECK(slurp(outFile).find("value=1") != std::string::npos);
}

TEST_CASE("render svg draws the pawn-tree figure") {
  fs::path outFile = scratch() / "tree.svg";
  CHECK(run({"render", "--pawn-tree", "2", "--format", "svg", "--out",
             outFile.string()}) == 0);
  std::string svg = slurp(outFile);
  CHECK(svg.find("<svg") != std::string::npos);
  // Depth 2 has seven node apexes, each drawn as a circled marker.
  CHECK(countSub(svg, "node-marker") == 7);
}

TEST_CASE("argument errors exit with code 2") {
  CHECK(run({"window", "--in", "/nonexistent/file", "--rect", "0", "0", "1",
             "1"}) == 2);
  CHECK(run({"solve", "--pos", "/nonexistent/file", "--objective",
             "checkmate:white"}) == 2);
  CHECK(run({"no-such-command"}) == 2);
}
