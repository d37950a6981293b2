#include "xsect/exact.hpp"

namespace xsect::exact {

int orient(const PointQ& a, const PointQ& b, const PointQ& c) {
  const mpq_class det = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return sgn(det);
}

mpq_class twice_area(const LoopQ& loop) {
  mpq_class s = 0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PointQ& p = loop[i];
    const PointQ& q = loop[(i + 1) % n];
    s += p.x * q.y - p.y * q.x;
  }
  return s;
}

bool on_segment(const PointQ& p, const PointQ& a, const PointQ& b) {
  if (orient(a, b, p) != 0) return false;
  const bool in_x = (p.x >= (a.x < b.x ? a.x : b.x)) && (p.x <= (a.x < b.x ? b.x : a.x));
  const bool in_y = (p.y >= (a.y < b.y ? a.y : b.y)) && (p.y <= (a.y < b.y ? b.y : a.y));
  return in_x && in_y;
}

int locate(const PointQ& p, const LoopQ& loop) {
  int winding = 0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PointQ& a = loop[i];
    const PointQ& b = loop[(i + 1) % n];
    if (on_segment(p, a, b)) return 0;
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) ++winding;
    } else {
      if (b.y <= p.y && orient(a, b, p) < 0) --winding;
    }
  }
  return winding != 0 ? 1 : -1;
}

bool segments_intersect(const PointQ& a, const PointQ& b, const PointQ& c, const PointQ& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

bool is_simple(const LoopQ& loop) {
  const std::size_t n = loop.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const PointQ& a = loop[i];
    const PointQ& b = loop[(i + 1) % n];
    if (a == b) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const PointQ& c = loop[j];
      const PointQ& d = loop[(j + 1) % n];
      const bool adjacent_next = (j == i + 1);
      const bool adjacent_prev = (i == 0 && j == n - 1);
      if (adjacent_next) {
        // Shared vertex b == c; fail if they overlap beyond it.
        if (orient(a, b, d) == 0 && (on_segment(d, a, b) || on_segment(a, c, d))) return false;
        continue;
      }
      if (adjacent_prev) {
        if (orient(c, d, b) == 0 && (on_segment(b, c, d) || on_segment(c, a, b))) return false;
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

}  // namespace xsect::exact
