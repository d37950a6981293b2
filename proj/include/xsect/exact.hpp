#pragma once

#include <gmpxx.h>

#include <vector>

#include "xsect/vec.hpp"

namespace xsect::exact {

/// Point with rational coordinates. Every finite double is an exact
/// rational, so conversion from Vec2 loses nothing.
struct PointQ {
  mpq_class x, y;

  PointQ() = default;
  PointQ(mpq_class a, mpq_class b) : x(std::move(a)), y(std::move(b)) {}
  explicit PointQ(const Vec2& p) : x(p[0]), y(p[1]) {}
  Vec2 approx() const { return {x.get_d(), y.get_d()}; }
  friend bool operator==(const PointQ& a, const PointQ& b) { return a.x == b.x && a.y == b.y; }
};

using LoopQ = std::vector<PointQ>;

struct PolygonQ {
  LoopQ outer;               // counter-clockwise
  std::vector<LoopQ> holes;  // clockwise
};

/// Sign of the orientation determinant of (a, b, c): +1 left turn.
int orient(const PointQ& a, const PointQ& b, const PointQ& c);

/// Twice the signed area.
mpq_class twice_area(const LoopQ& loop);

/// True iff p lies on the closed segment [a, b].
bool on_segment(const PointQ& p, const PointQ& a, const PointQ& b);

/// +1 strictly inside, 0 on the boundary, -1 outside (winding rule).
int locate(const PointQ& p, const LoopQ& loop);

/// Closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(const PointQ& a, const PointQ& b, const PointQ& c, const PointQ& d);

/// No two non-adjacent edges touch and adjacent edges meet only at their
/// shared vertex. O(n^2).
bool is_simple(const LoopQ& loop);

}  // namespace xsect::exact
