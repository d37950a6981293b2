#pragma once

#include <array>
#include <vector>

#include "xsect/arrangement.hpp"
#include "xsect/grid.hpp"
#include "xsect/sections.hpp"

namespace xsect {

/// Convex hull of a 3D point set. Flat (coplanar) inputs yield a planar
/// polygon instead of a solid.
struct ConvexHull3 {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;  ///< outward oriented (solid case)
  std::vector<Hyperplane<3>> facets;          ///< outward facet planes (solid case)
  bool flat = false;
  Hyperplane<3> support;                      ///< flat case: the carrying plane
  PlaneFrame<3> frame;                        ///< flat case
  Loop polygon;                               ///< flat case, CCW in `frame`

  bool contains(const Vec3& x, double eps) const;
};

ConvexHull3 convex_hull(const std::vector<Vec3>& points, double eps);

/// Convex hull of 2D points, counter-clockwise, collinear points removed.
Loop convex_hull_2d(std::vector<Vec2> points);

/// One connectivity class of sections in a cell and its hull.
template <int D>
struct ConvexPiece {
  int cell = -1;
  std::vector<int> sections;  ///< global section ids
  std::vector<Vec<D>> points;  ///< section-contour points clipped to the faces
  // 3D: the hull; 2D: the hull polygon (CCW).
  ConvexHull3 hull3;
  Loop hull2;

  bool contains(const Vec<D>& x, double eps) const;
};

template <int D>
struct ConvReconstruction {
  std::vector<ConvexPiece<D>> pieces;
  int beta0 = 0;
};

/// Per cell: classes of sections connected in R_C (read from the R grid
/// labels), and the convex hull of each class; beta0 joins pieces of
/// neighbouring cells that share a section.
template <int D>
ConvReconstruction<D> reconstruct_convex_mode(const Arrangement<D>& arr, const SectionSet<D>& sections,
                                              const Grid<D>& grid, const GridLabels<D>& labels);

struct ConformityResult {
  bool pass = true;
  int samples = 0;
  int mismatches = 0;
};

/// On each cutting-plane face, sampled points must be in some hull of the
/// cell exactly when they are in a section; points within `band` of a
/// section contour are skipped.
template <int D>
ConformityResult check_conformity(const ConvReconstruction<D>& conv, const Arrangement<D>& arr,
                                  const SectionSet<D>& sections, int samples_per_face, double band);

}  // namespace xsect
