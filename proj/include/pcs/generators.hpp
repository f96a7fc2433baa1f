#pragma once

#include <array>
#include <string>
#include <vector>

#include "pcs/errors.hpp"
#include "pcs/precubical.hpp"

namespace pcs {

/// One vertex, one directed self-loop: the directed circle.
inline PrecubicalSet gen_circle() {
  PrecubicalSet x;
  CubeId v = x.add_cube(0, "v");
  CubeId e = x.add_cube(1, "e");
  x.set_face(e, Sign::Minus, 1, v);
  x.set_face(e, Sign::Plus, 1, v);
  return x;
}

/// One vertex, k directed self-loops e0..e{k-1}.
inline PrecubicalSet gen_wedge(int k) {
  if (k < 0) throw DomainError("wedge: negative loop count");
  PrecubicalSet x;
  CubeId v = x.add_cube(0, "v");
  for (int i = 0; i < k; ++i) {
    CubeId e = x.add_cube(1, "e" + std::to_string(i));
    x.set_face(e, Sign::Minus, 1, v);
    x.set_face(e, Sign::Plus, 1, v);
  }
  return x;
}

/// One vertex, two loops a and b, one square gluing them into a torus:
/// both axis-1 faces are a, both axis-2 faces are b.
inline PrecubicalSet gen_torus() {
  PrecubicalSet x;
  CubeId v = x.add_cube(0, "v");
  CubeId a = x.add_cube(1, "a");
  CubeId b = x.add_cube(1, "b");
  CubeId s = x.add_cube(2, "s");
  for (CubeId e : {a, b}) {
    x.set_face(e, Sign::Minus, 1, v);
    x.set_face(e, Sign::Plus, 1, v);
  }
  x.set_face(s, Sign::Minus, 1, a);
  x.set_face(s, Sign::Plus, 1, a);
  x.set_face(s, Sign::Minus, 2, b);
  x.set_face(s, Sign::Plus, 2, b);
  return x;
}

/// Inclusive, 0-indexed rectangle of grid cells.
struct CellRect {
  int x1 = 0, y1 = 0, x2 = 0, y2 = 0;
};

/// m x n grid of unit squares (so (m+1)(n+1) vertices), every edge
/// pointing in the increasing coordinate direction; squares overlapping
/// a forbidden rectangle are omitted (their boundary edges remain).
/// Names: v_x_y; ex_x_y runs v_x_y -> v_{x+1}_y; ey_x_y runs
/// v_x_y -> v_x_{y+1}; sq_x_y is the cell with corner v_x_y.
inline PrecubicalSet gen_grid(int m, int n, const std::vector<CellRect>& forbidden = {}) {
  if (m < 1 || n < 1) throw DomainError("grid: extents must be at least 1");
  for (const CellRect& r : forbidden)
    if (r.x1 < 0 || r.y1 < 0 || r.x1 > r.x2 || r.y1 > r.y2 || r.x2 >= m || r.y2 >= n)
      throw DomainError("grid: forbidden rectangle (" + std::to_string(r.x1) + "," +
                        std::to_string(r.y1) + ")-(" + std::to_string(r.x2) + "," +
                        std::to_string(r.y2) + ") is outside the " + std::to_string(m) + "x" +
                        std::to_string(n) + " cell range");

  auto nm = [](const char* base, int x, int y) {
    return std::string(base) + "_" + std::to_string(x) + "_" + std::to_string(y);
  };

  PrecubicalSet g;
  for (int y = 0; y <= n; ++y)
    for (int x = 0; x <= m; ++x) g.add_cube(0, nm("v", x, y));
  auto v = [&](int x, int y) { return *g.find(nm("v", x, y)); };

  for (int y = 0; y <= n; ++y)
    for (int x = 0; x < m; ++x) {
      CubeId e = g.add_cube(1, nm("ex", x, y));
      g.set_face(e, Sign::Minus, 1, v(x, y));
      g.set_face(e, Sign::Plus, 1, v(x + 1, y));
    }
  for (int y = 0; y < n; ++y)
    for (int x = 0; x <= m; ++x) {
      CubeId e = g.add_cube(1, nm("ey", x, y));
      g.set_face(e, Sign::Minus, 1, v(x, y));
      g.set_face(e, Sign::Plus, 1, v(x, y + 1));
    }

  auto cell_allowed = [&](int x, int y) {
    for (const CellRect& r : forbidden)
      if (x >= r.x1 && x <= r.x2 && y >= r.y1 && y <= r.y2) return false;
    return true;
  };
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x) {
      if (!cell_allowed(x, y)) continue;
      CubeId s = g.add_cube(2, nm("sq", x, y));
      g.set_face(s, Sign::Minus, 1, *g.find(nm("ey", x, y)));
      g.set_face(s, Sign::Plus, 1, *g.find(nm("ey", x + 1, y)));
      g.set_face(s, Sign::Minus, 2, *g.find(nm("ex", x, y)));
      g.set_face(s, Sign::Plus, 2, *g.find(nm("ex", x, y + 1)));
    }
  return g;
}

/// Dispatch by generator name and integer parameters, as accepted on
/// the command line.
inline PrecubicalSet generate(const std::string& name, const std::vector<int>& params,
                              const std::vector<CellRect>& forbidden = {}) {
  auto arity = [&](std::size_t want) {
    if (params.size() != want)
      throw DomainError("generator '" + name + "' expects " + std::to_string(want) +
                        " parameter(s), got " + std::to_string(params.size()));
  };
  if (name != "grid" && !forbidden.empty())
    throw DomainError("--forbid applies only to the grid generator");
  if (name == "circle") {
    arity(0);
    return gen_circle();
  }
  if (name == "wedge") {
    arity(1);
    return gen_wedge(params[0]);
  }
  if (name == "torus") {
    arity(0);
    return gen_torus();
  }
  if (name == "grid") {
    arity(2);
    return gen_grid(params[0], params[1], forbidden);
  }
  if (name == "cube") {
    arity(1);
    return standard_cube(params[0]);
  }
  throw DomainError("unknown generator '" + name +
                    "' (expected circle, wedge, torus, grid, or cube)");
}

}  // namespace pcs
