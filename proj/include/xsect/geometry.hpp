#pragma once

#include <vector>

#include "xsect/errors.hpp"
#include "xsect/vec.hpp"

namespace xsect {

/// Geometric tolerances. Both are scene-relative: use `scaled` to derive
/// them from a bounding-box diameter.
struct Tolerance {
  double eps_geom = 1e-9;
  double eps_angle = 1e-9;

  static Tolerance scaled(double scene_diameter, double rel_geom = 1e-9, double eps_angle = 1e-9);
  void validate() const;
};

/// Oriented hyperplane {x : normal . x = offset} with unit normal.
template <int D>
struct Hyperplane {
  Vec<D> normal{};
  double offset = 0.0;

  Hyperplane() = default;
  /// Normalizes `n` (and scales `o` accordingly). Throws on zero normal.
  Hyperplane(const Vec<D>& n, double o);

  Hyperplane flipped() const;
  Vec<D> project(const Vec<D>& x) const;
};

template <int D>
double signed_distance(const Vec<D>& x, const Hyperplane<D>& h) {
  return dot(h.normal, x) - h.offset;
}

/// Local coordinate frame on a hyperplane. In 3D a plane gets an in-plane
/// orthonormal basis (u, v); in 2D a line gets a single direction.
template <int D>
struct PlaneFrame;

template <>
struct PlaneFrame<3> {
  Vec3 origin{};
  Vec3 u{}, v{};

  static PlaneFrame canonical(const Hyperplane<3>& h);
  Vec2 to_local(const Vec3& x) const { return {dot(x - origin, u), dot(x - origin, v)}; }
  Vec3 to_world(const Vec2& p) const { return origin + u * p[0] + v * p[1]; }
};

template <>
struct PlaneFrame<2> {
  Vec2 origin{};
  Vec2 dir{};

  static PlaneFrame canonical(const Hyperplane<2>& h);
  double to_local(const Vec2& x) const { return dot(x - origin, dir); }
  Vec2 to_world(double s) const { return origin + dir * s; }
};

using Loop = std::vector<Vec2>;

/// Region in plane-local coordinates: CCW outer loop minus CW holes.
struct PolygonWithHoles {
  Loop outer;
  std::vector<Loop> holes;
};

enum class Location { Inside, OnBoundary, Outside };

double signed_area(const Loop& loop);
double distance_to_segment(const Vec2& p, const Vec2& a, const Vec2& b);

/// Even-odd classification; points within `tol.eps_geom` of an edge are
/// OnBoundary. Throws GeometryError for a zero-area loop.
Location point_in_polygon(const Vec2& p, const PolygonWithHoles& poly, const Tolerance& tol);

/// Axis-aligned bounding box of a loop, used as a cheap prefilter.
struct Rect {
  Vec2 lo{}, hi{};
  bool contains(const Vec2& p, double pad = 0.0) const {
    return p[0] >= lo[0] - pad && p[0] <= hi[0] + pad && p[1] >= lo[1] - pad && p[1] <= hi[1] + pad;
  }
};
Rect bounds_of(const Loop& loop);

/// Sutherland-Hodgman clip of a loop against a convex polygon.
Loop clip_to_convex(Loop subject, const Loop& clipper);

}  // namespace xsect
