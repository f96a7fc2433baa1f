#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pcs/approx.hpp"
#include "pcs/arith.hpp"
#include "pcs/errors.hpp"
#include "pcs/paths.hpp"
#include "pcs/precubical.hpp"

namespace pcs {

// ---------------------------------------------------------------------------
// The `pcs v1` instance format. Line-oriented:
//
//   pcs v1
//   cube <name> dim <n>
//   face <name> <-|+> <axis> <target-name>
//
// Every dim-n cube declares exactly 2n faces. Blank lines and lines
// starting with '#' are skipped on parse; the serializer never emits
// them, and canonical files (cubes dimension-major/index-minor, faces
// per cube with ascending axis, '-' before '+') round-trip byte-exactly.

namespace io_detail {

inline bool is_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] inline void fail(int line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace io_detail

inline PrecubicalSet parse_pcs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  bool saw_header = false;
  PrecubicalSet x;
  std::vector<int> cube_decl_line;  // parallel to declaration order
  std::vector<CubeId> decl_order;
  struct FaceDecl {
    int line_no;
    std::string cube, target;
    Sign sign;
    int axis;
  };
  std::vector<FaceDecl> face_decls;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> toks = io_detail::tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;

    if (!saw_header) {
      if (toks.size() != 2 || toks[0] != "pcs" || toks[1] != "v1")
        io_detail::fail(line_no, "expected header 'pcs v1'");
      saw_header = true;
      continue;
    }

    if (toks[0] == "cube") {
      if (toks.size() != 4 || toks[2] != "dim")
        io_detail::fail(line_no, "expected 'cube <name> dim <n>'");
      if (!io_detail::is_name(toks[1]))
        io_detail::fail(line_no, "cube name '" + toks[1] + "' is not an identifier");
      int dim = -1;
      try {
        dim = std::stoi(toks[3]);
      } catch (...) {
        io_detail::fail(line_no, "bad dimension '" + toks[3] + "'");
      }
      if (dim < 0) io_detail::fail(line_no, "negative dimension");
      if (x.find(toks[1])) io_detail::fail(line_no, "duplicate cube '" + toks[1] + "'");
      decl_order.push_back(x.add_cube(dim, toks[1]));
      cube_decl_line.push_back(line_no);
    } else if (toks[0] == "face") {
      if (toks.size() != 5)
        io_detail::fail(line_no, "expected 'face <name> <-|+> <axis> <target>'");
      if (toks[2] != "-" && toks[2] != "+")
        io_detail::fail(line_no, "face sign must be '-' or '+', got '" + toks[2] + "'");
      int axis = -1;
      try {
        axis = std::stoi(toks[3]);
      } catch (...) {
        io_detail::fail(line_no, "bad axis '" + toks[3] + "'");
      }
      face_decls.push_back(
          {line_no, toks[1], toks[4], toks[2] == "-" ? Sign::Minus : Sign::Plus, axis});
    } else {
      io_detail::fail(line_no, "unknown directive '" + toks[0] + "'");
    }
  }
  if (!saw_header) io_detail::fail(line_no, "empty input: missing 'pcs v1' header");

  // Second pass: resolve face declarations now that all cubes exist.
  std::vector<std::vector<std::vector<char>>> seen(x.max_dim() + 1);
  for (int d = 0; d <= x.max_dim(); ++d)
    seen[d].assign(x.count(d), std::vector<char>(2 * d, 0));

  for (const FaceDecl& f : face_decls) {
    auto cube = x.find(f.cube);
    if (!cube) io_detail::fail(f.line_no, "face of undeclared cube '" + f.cube + "'");
    auto target = x.find(f.target);
    if (!target) io_detail::fail(f.line_no, "face targets undeclared cube '" + f.target + "'");
    if (f.axis < 1 || f.axis > cube->dim)
      io_detail::fail(f.line_no, "axis " + std::to_string(f.axis) + " out of range for '" +
                                     f.cube + "' (dim " + std::to_string(cube->dim) + ")");
    if (target->dim != cube->dim - 1)
      io_detail::fail(f.line_no, "face target '" + f.target + "' has dim " +
                                     std::to_string(target->dim) + ", expected " +
                                     std::to_string(cube->dim - 1));
    char& mark = seen[cube->dim][cube->index][PrecubicalSet::slot(f.axis, f.sign)];
    if (mark)
      io_detail::fail(f.line_no, "duplicate face declaration for '" + f.cube + "'");
    mark = 1;
    x.set_face(*cube, f.sign, f.axis, *target);
  }

  for (std::size_t k = 0; k < decl_order.size(); ++k) {
    CubeId c = decl_order[k];
    int declared = 0;
    for (char m : seen[c.dim][c.index]) declared += m ? 1 : 0;
    if (declared != 2 * c.dim)
      io_detail::fail(cube_decl_line[k], "cube '" + x.name(c) + "' declares " +
                                             std::to_string(declared) + " of " +
                                             std::to_string(2 * c.dim) + " required faces");
  }
  return x;
}

/// Canonical text form; parse(serialize(X)) reproduces X exactly.
inline std::string serialize_pcs(const PrecubicalSet& x) {
  std::ostringstream out;
  out << "pcs v1\n";
  for (int d = 0; d <= x.max_dim(); ++d)
    for (int i = 0; i < x.count(d); ++i)
      out << "cube " << x.name(CubeId{d, i}) << " dim " << d << "\n";
  for (int d = 1; d <= x.max_dim(); ++d)
    for (int i = 0; i < x.count(d); ++i) {
      CubeId c{d, i};
      for (int axis = 1; axis <= d; ++axis)
        for (Sign s : {Sign::Minus, Sign::Plus})
          out << "face " << x.name(c) << " " << sign_char(s) << " " << axis << " "
              << x.name(x.face(c, s, axis)) << "\n";
    }
  return out.str();
}

// ---------------------------------------------------------------------------
// Path literals: `path <vertex> <edge> <edge> ...`

inline EdgePath parse_path(const PrecubicalSet& x, const std::string& literal) {
  std::vector<std::string> toks = io_detail::tokens_of(literal);
  if (toks.empty() || toks[0] != "path")
    throw ParseError("path literal must start with 'path'");
  if (toks.size() < 2) throw ParseError("path literal missing start vertex");

  auto resolve = [&](const std::string& nm, int dim, const char* what) {
    auto c = x.find(nm);
    if (!c) throw ParseError(std::string(what) + " '" + nm + "' is not in the instance");
    if (c->dim != dim)
      throw ParseError(std::string(what) + " '" + nm + "' has dimension " +
                       std::to_string(c->dim) + ", expected " + std::to_string(dim));
    return *c;
  };

  EdgePath p;
  p.base = &x;
  p.start = resolve(toks[1], 0, "path vertex");
  for (std::size_t i = 2; i < toks.size(); ++i)
    p.edges.push_back(resolve(toks[i], 1, "path edge"));
  if (auto defect = path_defect(p))
    throw ParseError("path does not chain at edge " + std::to_string(*defect));
  return p;
}

inline std::string format_path(const PrecubicalSet& x, const EdgePath& p) {
  std::ostringstream out;
  out << "path " << x.name(p.start);
  for (CubeId e : p.edges) out << " " << x.name(e);
  return out.str();
}

// ---------------------------------------------------------------------------
// Track files: one `seg <cube> <from-coords> <to-coords>` per line,
// coordinates as exact rationals `p/q` (or bare integers).

inline Rat parse_rational(const std::string& tok, int line_no) {
  auto bad = [&]() { io_detail::fail(line_no, "bad rational '" + tok + "'"); };
  std::string num = tok, den = "1";
  if (auto pos = tok.find('/'); pos != std::string::npos) {
    num = tok.substr(0, pos);
    den = tok.substr(pos + 1);
  }
  if (num.empty() || den.empty() || num == "-") bad();
  for (std::size_t i = 0; i < num.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(num[i])) && !(i == 0 && num[i] == '-')) bad();
  for (char c : den)
    if (!std::isdigit(static_cast<unsigned char>(c))) bad();
  Int d(den);
  if (d == 0) io_detail::fail(line_no, "zero denominator in '" + tok + "'");
  return Rat(Int(num), d);
}

inline PLDipath parse_track(const PrecubicalSet& x, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  PLDipath track;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> toks = io_detail::tokens_of(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks[0] != "seg") io_detail::fail(line_no, "unknown directive '" + toks[0] + "'");
    if (toks.size() < 2) io_detail::fail(line_no, "expected 'seg <cube> <from> <to>'");
    auto carrier = x.find(toks[1]);
    if (!carrier) io_detail::fail(line_no, "unknown cube '" + toks[1] + "'");
    std::size_t dim = static_cast<std::size_t>(carrier->dim);
    if (toks.size() != 2 + 2 * dim)
      io_detail::fail(line_no, "cube '" + toks[1] + "' has dimension " + std::to_string(dim) +
                                   "; expected " + std::to_string(2 * dim) + " coordinates");
    PLSegment seg;
    seg.carrier = *carrier;
    for (std::size_t i = 0; i < dim; ++i) seg.from.push_back(parse_rational(toks[2 + i], line_no));
    for (std::size_t i = 0; i < dim; ++i)
      seg.to.push_back(parse_rational(toks[2 + dim + i], line_no));
    track.segments.push_back(std::move(seg));
  }
  if (track.segments.empty()) io_detail::fail(line_no, "track has no segments");
  return track;
}

}  // namespace pcs
