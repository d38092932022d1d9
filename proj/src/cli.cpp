#include "tchess/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tchess/bishop.hpp"
#include "tchess/fixtures.hpp"
#include "tchess/games.hpp"
#include "tchess/pawn.hpp"
#include "tchess/render.hpp"
#include "tchess/solver.hpp"

namespace tchess {

namespace {

// Thrown for malformed inputs; mapped to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown when a verify-style command fails; mapped to exit code 1.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

// Atomic-enough for our purposes: write a sibling temp file, then rename.
void writeFile(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write " + tmp);
    f << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw InputError("cannot rename " + tmp + " to " + path);
}

void emit(const std::string& outPath, const std::string& content) {
  if (outPath.empty())
    std::cout << content;
  else
    writeFile(outPath, content);
}

std::vector<std::string> splitOn(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parseInt(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad " + what + ": '" + s + "'");
  }
}

Color parseColor(const std::string& s) {
  if (s == "white") return Color::White;
  if (s == "black") return Color::Black;
  throw InputError("bad color '" + s + "' (want white|black)");
}

// "x,y" pairs joined by ';', e.g. "6,13;6,14".
std::vector<Square> parseSquares(const std::string& s) {
  std::vector<Square> out;
  if (s.empty()) return out;
  for (const std::string& part : splitOn(s, ';')) {
    auto xy = splitOn(part, ',');
    if (xy.size() != 2) throw InputError("bad square '" + part + "' (want x,y)");
    out.push_back({parseInt(xy[0], "square file"), parseInt(xy[1], "square rank")});
  }
  return out;
}

// checkmate:<color>
// pawn-reaches:<color>:<squares>
// escape-race:<color>:<raySetA>:<raySetB>:<margin>:<guard 0|1>
Objective parseObjective(const std::string& text) {
  auto parts = splitOn(text, ':');
  if (parts.empty()) throw InputError("empty objective");
  const std::string& kind = parts[0];
  if (kind == "checkmate") {
    if (parts.size() != 2) throw InputError("objective: checkmate:<color>");
    return Objective::checkmate(parseColor(parts[1]));
  }
  if (kind == "pawn-reaches") {
    if (parts.size() != 3)
      throw InputError("objective: pawn-reaches:<color>:<x,y;x,y;...>");
    return Objective::pawnReaches(parseColor(parts[1]), parseSquares(parts[2]));
  }
  if (kind == "escape-race") {
    if (parts.size() != 6)
      throw InputError(
          "objective: escape-race:<color>:<raySetA>:<raySetB>:<margin>:<guard>");
    return Objective::escapeRace(parseColor(parts[1]), parseSquares(parts[2]),
                                 parseSquares(parts[3]),
                                 parseInt(parts[4], "margin"),
                                 parseInt(parts[5], "guard flag") != 0);
  }
  throw InputError("unknown objective kind '" + kind + "'");
}

std::string resultName(SolveResult r) {
  switch (r) {
    case SolveResult::AttackerWins: return "attacker-wins";
    case SolveResult::DefenderHolds: return "defender-holds";
    case SolveResult::Draw: return "draw";
    case SolveResult::Unknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------- schematic files

// Schematic files store the compiler inputs rather than materialized pieces:
// the positions are unbounded, and the compilers are deterministic, so
// importing re-runs the compiler and reproduces the identical schematic.
//
//   format=1                      format=1
//   kind=bishop-schematic         kind=pawn-schematic
//   k=<int>                       depth=<int>
//   clearance=<int>               name=<text>
//   spec:                         support=<node> <node> ...
//   <gamespec lines>

struct LoadedSchematic {
  SchematicPosition schematic;
  std::string kind;
};

LoadedSchematic loadSchematic(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> kv;
  std::string specTail;
  bool inSpec = false;
  bool first = true;
  while (std::getline(in, line)) {
    if (inSpec) {
      specTail += line + "\n";
      continue;
    }
    if (line == "spec:") {
      inSpec = true;
      continue;
    }
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("schematic: bad line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
    if (first && (line != "format=1"))
      throw InputError("schematic: missing format=1 header");
    first = false;
  }
  auto need = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw InputError("schematic: missing " + k + "=");
    return it->second;
  };
  std::string kind = need("kind");
  if (kind == "bishop-schematic") {
    LayoutParams layout;
    layout.k = parseInt(need("k"), "k");
    layout.clearance = parseInt(need("clearance"), "clearance");
    ExplicitGameSpec spec = gamespec_parse(specTail);
    return {compile_bishop(spec.spec(), layout), kind};
  }
  if (kind == "pawn-schematic") {
    int depth = parseInt(need("depth"), "depth");
    std::vector<NodeSeq> support;
    std::istringstream ss(need("support"));
    std::string tok;
    while (ss >> tok) {
      auto node = node_from_string(tok);
      if (!node) throw InputError("schematic: bad node '" + tok + "'");
      support.push_back(*node);
    }
    ZSet z = z_from_support(std::move(support), need("name"));
    return {compile_pawn(z, depth), kind};
  }
  throw InputError("schematic: unknown kind '" + kind + "'");
}

std::string bishopSchematicFile(int k, int clearance, const std::string& specText) {
  std::ostringstream os;
  os << "format=1\nkind=bishop-schematic\nk=" << k << "\nclearance=" << clearance
     << "\nspec:\n"
     << specText;
  if (!specText.empty() && specText.back() != '\n') os << "\n";
  return os.str();
}

std::string pawnSchematicFile(int depth, const ZSet& z) {
  if (!z.supportComplete)
    throw InputError("compile-pawn: Z must be given by a complete finite support");
  std::ostringstream os;
  os << "format=1\nkind=pawn-schematic\ndepth=" << depth << "\nname=" << z.name
     << "\nsupport=";
  for (size_t i = 0; i < z.support.size(); ++i)
    os << (i ? " " : "") << node_to_string(z.support[i]);
  os << "\n";
  return os.str();
}

// ------------------------------------------------------------- subcommands

struct Args {
  std::string spec, zfile, support, name = "explicit";
  int k = 50, clearance = 20, depth = 3;
  std::string in, out, pos, objective, line, whenWhite, whenBlack;
  std::vector<int> rect;
  std::string boundary = "empty", kings = "omit", fixture, family, range, node = "()";
  bool all = false;
  int maxPlies = 64, slack = 10, width = 2, gsDepth = 8, player = 1, pawnTree = -1;
  long long maxStates = 20'000'000;
  std::string format = "ascii";
  std::vector<std::string> overlayR, overlayL, circles;
};

int cmdCompileBishop(const Args& a) {
  std::string specText = readFile(a.spec);
  gamespec_parse(specText);  // validate and fail early
  LayoutParams layout{a.k, a.clearance};
  validate_layout(layout);
  ExplicitGameSpec spec = gamespec_parse(specText);
  compile_bishop(spec.spec(), layout);  // must succeed before the file exists
  emit(a.out, bishopSchematicFile(a.k, a.clearance, specText));
  return 0;
}

int cmdCompilePawn(const Args& a) {
  std::vector<NodeSeq> support;
  std::string text = a.zfile.empty() ? a.support : readFile(a.zfile);
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    auto node = node_from_string(tok);
    if (!node) throw InputError("bad node '" + tok + "'");
    support.push_back(*node);
  }
  ZSet z = z_from_support(support, a.name);
  compile_pawn(z, a.depth);  // validate
  emit(a.out, pawnSchematicFile(a.depth, z));
  return 0;
}

int cmdWindow(const Args& a) {
  LoadedSchematic s = loadSchematic(readFile(a.in));
  if (a.rect.size() != 4) throw InputError("--rect wants 4 integers: x0 y0 x1 y1");
  Rect rect{{a.rect[0], a.rect[1]}, {a.rect[2], a.rect[3]}};
  if (rect.hi.file < rect.lo.file || rect.hi.rank < rect.lo.rank)
    throw InputError("--rect: lo must be <= hi componentwise");
  Boundary b = a.boundary == "wall" ? Boundary::WallBeyond : Boundary::EmptyBeyond;
  if (a.boundary != "wall" && a.boundary != "empty")
    throw InputError("--boundary wants empty|wall");
  KingPolicy kp = a.kings == "sealed" ? KingPolicy::SealedBox : KingPolicy::OmitKings;
  if (a.kings != "sealed" && a.kings != "omit")
    throw InputError("--kings wants omit|sealed");
  WindowResult w = window(s.schematic, rect, b, kp);
  for (const std::string& t : w.truncated)
    std::cerr << "truncated: " << t << "\n";
  if (w.kingsOmitted) std::cerr << "kings omitted\n";
  emit(a.out, w.position.serialize());
  return 0;
}

int cmdSolve(const Args& a) {
  Position pos = Position::parse(readFile(a.pos));
  Objective obj = parseObjective(a.objective);
  Outcome o = solve(pos, obj, SearchLimits{a.maxPlies, a.maxStates});
  std::ostringstream os;
  os << "format=1\nresult=" << resultName(o.result) << "\nplies=" << o.plies
     << "\nstates=" << o.statesExplored << "\n";
  if (!o.note.empty()) os << "note=" << o.note << "\n";
  os << "principal=";
  for (size_t i = 0; i < o.principal.size(); ++i)
    os << (i ? " " : "") << move_to_string(o.principal[i]);
  os << "\n";
  emit(a.out, os.str());
  return 0;
}

int cmdVerifyGadget(const Args& a) {
  std::vector<std::string> names;
  if (a.all)
    names = gadget_fixture_names();
  else if (!a.fixture.empty())
    names.push_back(a.fixture);
  else
    throw InputError("verify-gadget wants --fixture <name> or --all");
  bool ok = true;
  std::ostringstream os;
  for (const std::string& n : names) {
    GadgetReport r = verify_gadget(n);  // throws out_of_range on unknown
    os << r.render();
    ok = ok && r.passed;
  }
  emit(a.out, os.str());
  if (!ok) throw VerificationFailure("gadget verification failed");
  return 0;
}

int cmdVerifyLine(const Args& a) {
  Position pos = Position::parse(readFile(a.pos));
  std::vector<std::string> line = split_san_line(a.line);
  LineReport r = verify_forced_line(pos, line, parseObjective(a.whenWhite),
                                    parseObjective(a.whenBlack), a.slack,
                                    SearchLimits{a.maxPlies, a.maxStates});
  std::ostringstream os;
  os << "format=1\nline-legal=" << (r.lineLegal ? 1 : 0)
     << "\ndeviations=" << r.deviationsChecked
     << "\nall-refuted=" << (r.allRefuted ? 1 : 0) << "\nstates="
     << r.statesExplored << "\n";
  if (!r.error.empty()) os << "error=" << r.error << "\n";
  for (const auto& d : r.failures)
    os << "failure ply=" << d.plyIndex << " deviation=" << d.deviation << "\n";
  emit(a.out, os.str());
  if (!r.lineLegal || !r.allRefuted)
    throw VerificationFailure("forced-line verification failed");
  return 0;
}

int cmdValueFamily(const Args& a) {
  auto dots = a.range.find("..");
  if (dots == std::string::npos) throw InputError("--n wants lo..hi");
  int lo = parseInt(a.range.substr(0, dots), "range lo");
  int hi = parseInt(a.range.substr(dots + 2), "range hi");
  FamilyReport r = value_family(a.family, lo, hi);
  std::ostringstream os;
  os << "format=1\nfamily=" << r.family << "\n";
  for (const auto& e : r.entries) os << e.parameter << " " << e.value << "\n";
  os << "monotone=" << (r.strictlyIncreasing ? "strict" : "no") << "\n";
  emit(a.out, os.str());
  if (!r.strictlyIncreasing)
    throw VerificationFailure("value family is not strictly increasing");
  return 0;
}

int cmdGsValue(const Args& a) {
  ExplicitGameSpec spec = gamespec_parse(readFile(a.spec));
  auto node = node_from_string(a.node);
  if (!node) throw InputError("bad --node '" + a.node + "'");
  GsValue v = gs_value(spec.spec(), *node, a.width, a.gsDepth, a.player);
  std::ostringstream os;
  os << "format=1\nvalue=";
  switch (v.kind) {
    case GsKind::Value: os << v.value.to_string(); break;
    case GsKind::NoValue: os << "no-value"; break;
    case GsKind::Truncated: os << "truncated"; break;
  }
  os << "\n";
  emit(a.out, os.str());
  return 0;
}

int cmdRender(const Args& a) {
  if (a.pawnTree >= 0) {
    // The tree-shape figure: circled markers at every node apex of the
    // complete binary tree to the requested depth, on an empty board.
    PawnTreeLayout layout = pawn_tree_layout(a.pawnTree);
    SvgOptions opt;
    Rect r{{0, 0}, {1, 1}};
    bool any = false;
    for (const auto& [seq, sq] : layout.nodeAnchors) {
      opt.circles.push_back(sq);
      if (!any) {
        r = {sq, sq};
        any = true;
      }
      r.lo.file = std::min(r.lo.file, sq.file - 2);
      r.lo.rank = std::min(r.lo.rank, sq.rank - 2);
      r.hi.file = std::max(r.hi.file, sq.file + 2);
      r.hi.rank = std::max(r.hi.rank, sq.rank + 2);
    }
    Position empty(Variant{}, r, Boundary::EmptyBeyond, Color::White, {}, 0);
    if (a.format != "svg") throw InputError("--pawn-tree renders svg only");
    emit(a.out, render_svg(empty, opt));
    return 0;
  }
  Position pos = Position::parse(readFile(a.pos));
  if (a.format == "ascii") {
    emit(a.out, render_ascii(pos));
    return 0;
  }
  if (a.format == "svg") {
    SvgOptions opt;
    for (const std::string& s : a.overlayR) opt.overlayR.push_back(parseInt(s, "overlay-r"));
    for (const std::string& s : a.overlayL) opt.overlayL.push_back(parseInt(s, "overlay-l"));
    for (const std::string& s : a.circles) {
      auto sq = parseSquares(s);
      opt.circles.insert(opt.circles.end(), sq.begin(), sq.end());
    }
    emit(a.out, render_svg(pos, opt));
    return 0;
  }
  throw InputError("--format wants ascii|svg");
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
  CLI::App app{"Infinite-chess construction toolkit"};
  app.require_subcommand(1);
  Args a;

  auto* cb = app.add_subcommand("compile-bishop",
                                "Compile a game spec to a bishop-tree schematic");
  cb->add_option("--spec", a.spec, "game spec file")->required();
  cb->add_option("--k", a.k, "diagonal spacing");
  cb->add_option("--clearance", a.clearance, "stencil clearance");
  cb->add_option("--out", a.out, "output file (stdout when omitted)");

  auto* cp = app.add_subcommand("compile-pawn",
                                "Compile a choosing game to a pawn schematic");
  cp->add_option("--z", a.zfile, "file of Z-support nodes");
  cp->add_option("--support", a.support, "inline Z-support nodes");
  cp->add_option("--name", a.name, "Z-set name");
  cp->add_option("--depth", a.depth, "tree depth limit");
  cp->add_option("--out", a.out, "output file");

  auto* wi = app.add_subcommand("window", "Extract a finite window position");
  wi->add_option("--in", a.in, "schematic file")->required();
  wi->add_option("--rect", a.rect, "x0 y0 x1 y1")->expected(4)->required();
  wi->add_option("--boundary", a.boundary, "empty|wall");
  wi->add_option("--kings", a.kings, "omit|sealed");
  wi->add_option("--out", a.out, "output file");

  auto* so = app.add_subcommand("solve", "Solve a position for an objective");
  so->add_option("--pos", a.pos, "position file")->required();
  so->add_option("--objective", a.objective, "objective spec")->required();
  so->add_option("--max-plies", a.maxPlies);
  so->add_option("--max-states", a.maxStates);
  so->add_option("--out", a.out, "output file");

  auto* vg = app.add_subcommand("verify-gadget", "Run gadget lemma fixtures");
  vg->add_option("--fixture", a.fixture, "fixture name");
  vg->add_flag("--all", a.all, "run every fixture");
  vg->add_option("--out", a.out, "output file");

  auto* vl = app.add_subcommand("verify-line", "Verify a forced line");
  vl->add_option("--pos", a.pos, "position file")->required();
  vl->add_option("--line", a.line, "SAN tokens")->required();
  vl->add_option("--when-white-deviates", a.whenWhite, "objective")->required();
  vl->add_option("--when-black-deviates", a.whenBlack, "objective")->required();
  vl->add_option("--slack", a.slack, "refutation slack plies");
  vl->add_option("--max-plies", a.maxPlies);
  vl->add_option("--max-states", a.maxStates);
  vl->add_option("--out", a.out, "output file");

  auto* vf = app.add_subcommand("value-family", "Tabulate a value family");
  vf->add_option("--family", a.family, "pawn-chain|choosing")->required();
  vf->add_option("--n", a.range, "lo..hi")->required();
  vf->add_option("--out", a.out, "output file");

  auto* gv = app.add_subcommand("gs-value", "Value of a truncated game spec");
  gv->add_option("--spec", a.spec, "game spec file")->required();
  gv->add_option("--node", a.node, "start node, e.g. ()");
  gv->add_option("--width", a.width, "options per move");
  gv->add_option("--depth", a.gsDepth, "truncation depth");
  gv->add_option("--player", a.player, "1|2");
  gv->add_option("--out", a.out, "output file");

  auto* re = app.add_subcommand("render", "Render a position as ascii or svg");
  re->add_option("--pos", a.pos, "position file");
  re->add_option("--format", a.format, "ascii|svg");
  re->add_option("--pawn-tree", a.pawnTree, "render the tree figure to depth N");
  re->add_option("--overlay-r", a.overlayR, "R_n overlay indices");
  re->add_option("--overlay-l", a.overlayL, "L_n overlay indices");
  re->add_option("--circle", a.circles, "circled squares x,y");
  re->add_option("--out", a.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (cb->parsed()) return cmdCompileBishop(a);
    if (cp->parsed()) return cmdCompilePawn(a);
    if (wi->parsed()) return cmdWindow(a);
    if (so->parsed()) return cmdSolve(a);
    if (vg->parsed()) return cmdVerifyGadget(a);
    if (vl->parsed()) return cmdVerifyLine(a);
    if (vf->parsed()) return cmdValueFamily(a);
    if (gv->parsed()) return cmdGsValue(a);
    if (re->parsed()) return cmdRender(a);
  } catch (const VerificationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace tchess
