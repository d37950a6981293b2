#pragma once

#include <type_traits>
#include <utility>
#include <vector>

#include "xsect/geometry.hpp"

namespace xsect {

/// Closed interval of a line's local coordinate; a 2D section.
struct Interval {
  double lo = 0.0, hi = 0.0;
  bool contains(double s, double eps) const { return s >= lo - eps && s <= hi + eps; }
};

/// Section region type: an interval on a line (2D) or a polygon with
/// holes in plane-local coordinates (3D).
template <int D>
using Region = std::conditional_t<D == 2, Interval, PolygonWithHoles>;

template <int D>
struct PlaneSections {
  Hyperplane<D> plane;
  PlaneFrame<D> frame;
  std::vector<Region<D>> regions;
  std::vector<Rect> bounds;  // 3D only, parallel to regions
};

/// Sections on every cutting plane, with stable global section ids
/// (enumerated plane by plane).
template <int D>
class SectionSet {
 public:
  SectionSet() = default;
  explicit SectionSet(const std::vector<Hyperplane<D>>& planes);
  /// Explicit frames (stored in-plane bases). Each frame must lie on its plane.
  SectionSet(const std::vector<Hyperplane<D>>& planes, std::vector<PlaneFrame<D>> frames);

  void add(int plane, Region<D> region);

  int plane_count() const { return static_cast<int>(planes_.size()); }
  const PlaneSections<D>& on_plane(int plane) const { return planes_.at(static_cast<std::size_t>(plane)); }
  int total() const;
  int global_id(int plane, int region) const;
  std::pair<int, int> from_global(int id) const;

  /// Region of `plane` containing x (x is projected onto the plane first;
  /// boundary counts as inside). -1 if none.
  int find(int plane, const Vec<D>& x, const Tolerance& tol) const;

 private:
  std::vector<PlaneSections<D>> planes_;
};

}  // namespace xsect
