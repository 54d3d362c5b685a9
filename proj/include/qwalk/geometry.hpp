#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <variant>

namespace qwalk {

// 1D chain. Storage index s runs over [0, length); the physical coordinate is
// x = orientation * (s - origin). Walk simulations use centered lines
// (origin = length/2, orientation = +1). Chains terminated by a reflecting
// edge keep the edge at s = 0 with the lattice extending to negative x
// (origin = 0, orientation = -1), i.e. x = -s.
struct Line {
  int length = 0;
  int origin = 0;
  int orientation = +1;

  static Line centered(int length) { return Line{length, length / 2, +1}; }
  static Line reflecting(int length) { return Line{length, 0, -1}; }

  int coord(int site) const { return orientation * (site - origin); }
  int site_of(int x) const { return origin + orientation * x; }
};

// Square lattice with periodic boundaries. Storage site = sx * ly + sy
// (row-major in (x, y)); physical coordinates are centered so that
// x in [-lx/2, lx/2), y in [-ly/2, ly/2).
struct Torus2D {
  int lx = 0;
  int ly = 0;
  int origin_x = 0;
  int origin_y = 0;

  static Torus2D centered(int lx, int ly) { return Torus2D{lx, ly, lx / 2, ly / 2}; }

  int site(int sx, int sy) const { return sx * ly + sy; }
  int coord_x(int site) const { return site / ly - origin_x; }
  int coord_y(int site) const { return site % ly - origin_y; }
  int site_of(int x, int y) const { return (origin_x + x) * ly + (origin_y + y); }
};

using Geometry = std::variant<Line, Torus2D>;

inline int num_sites(const Geometry& g) {
  if (const auto* line = std::get_if<Line>(&g)) return line->length;
  const auto& t = std::get<Torus2D>(g);
  return t.lx * t.ly;
}

inline bool is_1d(const Geometry& g) { return std::holds_alternative<Line>(g); }

inline bool same_geometry(const Geometry& a, const Geometry& b) {
  if (a.index() != b.index()) return false;
  if (const auto* la = std::get_if<Line>(&a)) {
    const auto& lb = std::get<Line>(b);
    return la->length == lb.length && la->origin == lb.origin &&
           la->orientation == lb.orientation;
  }
  const auto& ta = std::get<Torus2D>(a);
  const auto& tb = std::get<Torus2D>(b);
  return ta.lx == tb.lx && ta.ly == tb.ly && ta.origin_x == tb.origin_x &&
         ta.origin_y == tb.origin_y;
}

inline int wrap_index(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

}  // namespace qwalk
