#pragma once

#include <array>
#include <vector>

#include "xsect/arrangement.hpp"
#include "xsect/grid.hpp"
#include "xsect/sections.hpp"

namespace xsect {

/// Triangle mesh of the reconstruction boundary; every triangle carries the
/// id of the cell it was extracted in (-1 outside the bounding box).
struct Mesh3D {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> cell_tags;
};

struct ManifoldReport {
  int boundary_edges = 0;     ///< edges used by one triangle
  int nonmanifold_edges = 0;  ///< edges used by more than two triangles
  int misoriented_edges = 0;  ///< edges traversed twice in the same direction
  long long euler = 0;

  bool ok() const { return boundary_edges == 0 && nonmanifold_edges == 0 && misoriented_edges == 0; }
};

ManifoldReport check_manifold(const Mesh3D& mesh);

/// Marching tetrahedra on the voxel-center lattice of the R labels, padded
/// by one empty layer so the surface closes. Edge crossings are refined by
/// bisection on the membership rule. Throws GeometryError if the result is
/// not a closed oriented manifold.
Mesh3D extract_mesh_3d(const Arrangement<3>& arr, const SectionSet<3>& sections, const Grid<3>& grid,
                       const GridLabels<3>& labels, int refine_iterations = 24);

}  // namespace xsect
