#include "xsect/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xsect {

Tolerance Tolerance::scaled(double scene_diameter, double rel_geom, double eps_angle) {
  Tolerance t;
  t.eps_geom = rel_geom * std::max(scene_diameter, 1e-300);
  t.eps_angle = eps_angle;
  t.validate();
  return t;
}

void Tolerance::validate() const {
  if (!(eps_geom > 0.0) || !(eps_angle > 0.0))
    throw ValidationError("tolerance", "eps_geom and eps_angle must be strictly positive");
}

template <int D>
Hyperplane<D>::Hyperplane(const Vec<D>& n, double o) {
  if (!is_finite(n) || !std::isfinite(o)) throw GeometryError("hyperplane with non-finite coefficients");
  const double len = norm(n);
  if (len < 1e-300) throw GeometryError("hyperplane with zero normal");
  normal = n * (1.0 / len);
  offset = o / len;
}

template <int D>
Hyperplane<D> Hyperplane<D>::flipped() const {
  Hyperplane h;
  h.normal = -normal;
  h.offset = -offset;
  return h;
}

template <int D>
Vec<D> Hyperplane<D>::project(const Vec<D>& x) const {
  return x - normal * signed_distance(x, *this);
}

template struct Hyperplane<2>;
template struct Hyperplane<3>;

PlaneFrame<3> PlaneFrame<3>::canonical(const Hyperplane<3>& h) {
  PlaneFrame f;
  f.origin = h.normal * h.offset;
  // Seed with the world axis least aligned with the normal.
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(h.normal[i]) < std::abs(h.normal[k])) k = i;
  Vec3 seed{};
  seed[k] = 1.0;
  f.u = normalized(cross(seed, h.normal));
  f.v = cross(h.normal, f.u);
  return f;
}

PlaneFrame<2> PlaneFrame<2>::canonical(const Hyperplane<2>& h) {
  PlaneFrame f;
  f.origin = h.normal * h.offset;
  f.dir = perp(h.normal);
  return f;
}

double signed_area(const Loop& loop) {
  double a = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(loop[i], loop[(i + 1) % n]);
  return 0.5 * a;
}

double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

Rect bounds_of(const Loop& loop) {
  Rect r{{1e300, 1e300}, {-1e300, -1e300}};
  for (const auto& p : loop) {
    r.lo[0] = std::min(r.lo[0], p[0]);
    r.lo[1] = std::min(r.lo[1], p[1]);
    r.hi[0] = std::max(r.hi[0], p[0]);
    r.hi[1] = std::max(r.hi[1], p[1]);
  }
  return r;
}

namespace {

// Returns +1 inside, 0 on boundary, -1 outside for a single loop (even-odd).
int classify_loop(const Vec2& p, const Loop& loop, double eps) {
  if (loop.size() < 3 || std::abs(signed_area(loop)) <= 0.0)
    throw GeometryError("degenerate polygon loop (zero area)");
  bool inside = false;
  const std::size_t n = loop.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[j];
    if (distance_to_segment(p, a, b) <= eps) return 0;
    if ((a[1] > p[1]) != (b[1] > p[1])) {
      const double x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
      if (p[0] < x) inside = !inside;
    }
  }
  return inside ? 1 : -1;
}

}  // namespace

Location point_in_polygon(const Vec2& p, const PolygonWithHoles& poly, const Tolerance& tol) {
  const int outer = classify_loop(p, poly.outer, tol.eps_geom);
  if (outer == 0) return Location::OnBoundary;
  if (outer < 0) {
    for (const auto& h : poly.holes) classify_loop(p, h, tol.eps_geom);  // validates
    return Location::Outside;
  }
  for (const auto& h : poly.holes) {
    const int c = classify_loop(p, h, tol.eps_geom);
    if (c == 0) return Location::OnBoundary;
    if (c > 0) return Location::Outside;
  }
  return Location::Inside;
}

Loop clip_to_convex(Loop subject, const Loop& clipper) {
  const double orient = signed_area(clipper) >= 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < clipper.size() && !subject.empty(); ++i) {
    const Vec2 a = clipper[i], b = clipper[(i + 1) % clipper.size()];
    auto side = [&](const Vec2& p) { return orient * cross(b - a, p - a); };
    Loop out;
    for (std::size_t k = 0; k < subject.size(); ++k) {
      const Vec2 p = subject[k], q = subject[(k + 1) % subject.size()];
      const double sp = side(p), sq = side(q);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) out.push_back(p + (q - p) * (sp / (sp - sq)));
    }
    subject = std::move(out);
  }
  return subject;
}

}  // namespace xsect
