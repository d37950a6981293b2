#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xsect/arrangement.hpp"
#include "xsect/sections.hpp"
#include "xsect/shapes.hpp"

namespace xsect {

/// Regular voxel grid covering a box; spacing per axis is at most `h`.
template <int D>
struct Grid {
  Box<D> box;
  std::array<int, D> n{};
  Vec<D> step{};

  static Grid covering(const Box<D>& box, double h);

  std::size_t size() const {
    std::size_t s = 1;
    for (int k = 0; k < D; ++k) s *= static_cast<std::size_t>(n[k]);
    return s;
  }
  std::size_t index(const std::array<int, D>& i) const {
    std::size_t idx = 0;
    for (int k = D - 1; k >= 0; --k) idx = idx * static_cast<std::size_t>(n[k]) + static_cast<std::size_t>(i[k]);
    return idx;
  }
  std::array<int, D> unindex(std::size_t idx) const {
    std::array<int, D> i{};
    for (int k = 0; k < D; ++k) {
      i[k] = static_cast<int>(idx % static_cast<std::size_t>(n[k]));
      idx /= static_cast<std::size_t>(n[k]);
    }
    return i;
  }
  Vec<D> center(const std::array<int, D>& i) const {
    Vec<D> x;
    for (int k = 0; k < D; ++k) x[k] = box.lo[k] + (i[k] + 0.5) * step[k];
    return x;
  }
  double max_step() const {
    double m = 0.0;
    for (int k = 0; k < D; ++k) m = std::max(m, step[k]);
    return m;
  }
};

/// Per-voxel cell id and membership in R (and in O when a shape is given).
template <int D>
struct GridLabels {
  std::vector<int> cell;
  std::vector<std::uint8_t> in_r;
  std::vector<std::uint8_t> in_o;  ///< empty without a ground-truth shape
};

/// Reference implementation, one voxel at a time.
template <int D>
GridLabels<D> classify_grid_serial(const Grid<D>& grid, const Arrangement<D>& arr, const SectionSet<D>& sections,
                                   const Shape<D>* shape);

/// OpenMP version; produces identical labels.
template <int D>
GridLabels<D> classify_grid_parallel(const Grid<D>& grid, const Arrangement<D>& arr, const SectionSet<D>& sections,
                                     const Shape<D>* shape);

}  // namespace xsect
