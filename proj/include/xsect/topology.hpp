#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xsect/exact.hpp"
#include "xsect/grid.hpp"

namespace xsect {

struct TopologySummary {
  int beta0 = 0, beta1 = 0, beta2 = 0;
  std::vector<int> per_component_holes;  ///< 2D only
  long long euler = 0;

  bool same_betti(const TopologySummary& o) const {
    return beta0 == o.beta0 && beta1 == o.beta1 && beta2 == o.beta2;
  }
};

/// Exact 2D summary: components are polygons, joined when they share a
/// boundary point; holes counted per component.
TopologySummary betti_2d(const std::vector<exact::PolygonQ>& polys);

/// Ground-truth 2D summary of a disjoint union of disks and annuli.
TopologySummary betti_2d(const Shape<2>& shape);

/// Cell counts of the dual cubical complex on occupied voxel centers:
/// vertices, edges (axis neighbours), squares, cubes.
template <int D>
struct CubicalCounts {
  long long v = 0, e = 0, f = 0, c = 0;
  long long euler() const { return v - e + f - c; }
};

template <int D>
CubicalCounts<D> cubical_counts_serial(const std::vector<std::uint8_t>& occ, const std::array<int, D>& n);
template <int D>
CubicalCounts<D> cubical_counts_parallel(const std::vector<std::uint8_t>& occ, const std::array<int, D>& n);

/// Betti numbers of the union of closed occupied voxels: full (8/26)
/// connectivity for the solid, face connectivity for the complement.
template <int D>
TopologySummary cubical_betti(const std::vector<std::uint8_t>& occ, const std::array<int, D>& n);

/// Every component of R and of its complement reaches the boundary of a
/// cell: each point is joined to its nearest boundary point by a segment on
/// which membership does not change. Voxel components that do not come within
/// half a voxel diagonal of such a face (a cutting-plane face for R, any face
/// or the grid border for the complement) are resolution artifacts near cell
/// skeletons; they are flipped. Returns the number of voxels changed.
template <int D>
int drop_unanchored_components(std::vector<std::uint8_t>& occ, const Grid<D>& grid, const std::vector<int>& cell_of,
                               const Arrangement<D>& arr);

/// Partition of section ids into blocks (each block sorted, blocks sorted).
struct ConnectivityPartition {
  std::vector<std::vector<int>> blocks;
  int untouched_components = 0;  ///< components of the oracle touching no section
  bool operator==(const ConnectivityPartition& o) const {
    return blocks == o.blocks && untouched_components == o.untouched_components;
  }
};

struct BijectionResult {
  bool match = true;
  ConnectivityPartition from_o, from_r;
  int unlinked_sections = 0;  ///< sections too small for any voxel to reach
};

/// Sections (global ids) carried by the cutting-plane faces of a cell.
template <int D>
std::vector<int> sections_of_cell(const Cell<D>& cell, const Arrangement<D>& arr, const SectionSet<D>& sections);

/// Partition of the cell's sections induced by the connected components of
/// `occ` restricted to the cell (flood fill on the cell's voxels). With
/// `occ_is_reconstruction`, each occupied voxel is also joined to the section
/// holding its nearest boundary point, which is exact for R.
template <int D>
ConnectivityPartition section_partition(int cell_id, const Arrangement<D>& arr, const SectionSet<D>& sections,
                                        const Grid<D>& grid, const std::vector<int>& cell_of,
                                        const std::vector<std::uint8_t>& occ, int* unlinked = nullptr,
                                        bool occ_is_reconstruction = false);

/// Compare the partitions induced by O_C and R_C.
template <int D>
BijectionResult component_bijection(int cell_id, const Arrangement<D>& arr, const SectionSet<D>& sections,
                                    const Grid<D>& grid, const GridLabels<D>& labels);

/// section_partition for every cell in one pass over the grid.
template <int D>
std::vector<ConnectivityPartition> section_partitions_all(const Arrangement<D>& arr, const SectionSet<D>& sections,
                                                          const Grid<D>& grid, const std::vector<int>& cell_of,
                                                          const std::vector<std::uint8_t>& occ,
                                                          bool occ_is_reconstruction = false);

/// component_bijection for every cell, indexed by cell id.
template <int D>
std::vector<BijectionResult> component_bijection_all(const Arrangement<D>& arr, const SectionSet<D>& sections,
                                                     const Grid<D>& grid, const GridLabels<D>& labels);

}  // namespace xsect
