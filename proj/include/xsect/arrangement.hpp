#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xsect/geometry.hpp"

namespace xsect {

/// Axis-aligned box.
template <int D>
struct Box {
  Vec<D> lo{}, hi{};

  double diameter() const { return distance(lo, hi); }
  bool contains(const Vec<D>& x, double pad = 0.0) const {
    for (int i = 0; i < D; ++i)
      if (x[i] < lo[i] - pad || x[i] > hi[i] + pad) return false;
    return true;
  }
  Vec<D> center() const { return (lo + hi) * 0.5; }
};

/// Marks a face (or carrier) that comes from the bounding box rather than
/// from a cutting plane.
inline constexpr int kBoundingBox = -1;

/// One facet of a convex cell.
template <int D>
struct Face {
  Hyperplane<D> plane;  ///< outward normal: cell lies in {x : n.x <= offset}
  int plane_id = kBoundingBox;
  int side = 0;  ///< +1 if the cell is on the cutting plane's positive side
  int wall = -1;  ///< bounding-box wall index for box faces
  /// 2D: the two endpoints in counter-clockwise cell order.
  /// 3D: the facet polygon, counter-clockwise seen from outside.
  std::vector<Vec<D>> vertices;

  bool is_bbox() const { return plane_id == kBoundingBox; }
  /// Non-negative for points inside the cell.
  double interior_distance(const Vec<D>& x) const { return plane.offset - dot(plane.normal, x); }
};

template <int D>
struct Cell {
  int id = -1;
  std::vector<Face<D>> faces;         ///< irredundant: one per supporting facet
  std::vector<std::int8_t> signs;     ///< per cutting plane, side of the cell
  std::vector<Vec<D>> vertices;
  Vec<D> interior{};                  ///< strictly interior point
  bool bounded = true;                ///< no facet lies on the bounding box

  // 2D only: counter-clockwise vertex loop as ids into the arrangement's
  // canonical vertex pool; faces[i] joins loop_vertices[i] and [i+1].
  std::vector<int> loop_vertices;

  bool contains(const Vec<D>& x, double eps) const {
    for (const auto& f : faces)
      if (f.interior_distance(x) < -eps) return false;
    return true;
  }
  double diameter() const;
};

template <int D>
struct NearestFaceResult {
  std::vector<int> faces;      ///< indices into Cell::faces achieving the minimum
  std::vector<Vec<D>> points;  ///< orthogonal projections, parallel to `faces`
  double distance = 0.0;
};

/// Arrangement of cutting hyperplanes clipped to a bounding box.
template <int D>
class Arrangement {
 public:
  Arrangement(std::vector<Hyperplane<D>> planes, const Box<D>& bbox, const Tolerance& tol);

  const std::vector<Hyperplane<D>>& planes() const { return planes_; }
  const std::vector<Cell<D>>& cells() const { return cells_; }
  const Cell<D>& cell(int id) const { return cells_.at(static_cast<std::size_t>(id)); }
  const Box<D>& bbox() const { return bbox_; }
  const Tolerance& tolerance() const { return tol_; }

  /// Cell whose sign vector matches x; points within eps_geom of a cutting
  /// plane go to its positive side. Throws if x is outside the box.
  int locate(const Vec<D>& x) const;

  /// Every cell whose closure contains x (ties on planes expanded).
  std::vector<int> cells_containing(const Vec<D>& x) const;

  /// Canonical vertex pool (2D only; empty in 3D).
  const std::vector<Vec2>& vertex_pool() const { return vertex_pool_; }

  /// Line/plane carrying a carrier id (cutting index, or -1-wall for walls).
  Hyperplane<D> carrier(int id) const;

 private:
  int lookup(const std::vector<std::int8_t>& signs) const;

  std::vector<Hyperplane<D>> planes_;
  Box<D> bbox_;
  Tolerance tol_;
  std::vector<Cell<D>> cells_;
  std::unordered_map<std::string, int> by_signs_;
  std::vector<Vec2> vertex_pool_;
};

/// Nearest boundary face(s) of a cell; all faces within eps_geom of the
/// minimum are reported. Throws GeometryError when x is outside the cell.
template <int D>
NearestFaceResult<D> nearest_face(const Vec<D>& x, const Cell<D>& cell, const Tolerance& tol);

/// Maximum of min distance to the cutting planes over the cell (Chebyshev
/// radius w.r.t. cutting planes only; bbox walls ignored). +inf if the
/// underlying arrangement cell admits arbitrarily large inscribed balls.
template <int D>
double cell_height(const Cell<D>& cell, const Arrangement<D>& arr);

/// Chebyshev center reported alongside the value (meaningless when infinite).
template <int D>
std::pair<double, Vec<D>> cell_height_with_center(const Cell<D>& cell, const Arrangement<D>& arr);

/// min over cutting planes of sign-adjusted distance, used by oracles.
template <int D>
double distance_to_cutting_planes(const Vec<D>& x, const Cell<D>& cell, const Arrangement<D>& arr);

}  // namespace xsect
