#include "xsect/grid.hpp"

#include <cmath>

#include "xsect/reconstruction.hpp"

namespace xsect {

template <int D>
Grid<D> Grid<D>::covering(const Box<D>& box, double h) {
  if (!(h > 0.0)) throw ValidationError("grid", "voxel size must be positive");
  Grid g;
  g.box = box;
  for (int k = 0; k < D; ++k) {
    const double len = box.hi[k] - box.lo[k];
    g.n[k] = std::max(1, static_cast<int>(std::ceil(len / h - 1e-9)));
    g.step[k] = len / g.n[k];
  }
  if (g.size() > 400'000'000ULL) throw ValidationError("grid", "voxel grid too large; increase the voxel size");
  return g;
}

namespace {

template <int D>
void label_voxel(std::size_t v, const Grid<D>& grid, const Arrangement<D>& arr, const SectionSet<D>& sections,
                 const Shape<D>* shape, GridLabels<D>& out) {
  const Vec<D> x = grid.center(grid.unindex(v));
  const Membership<D> m = classify_point(x, arr, sections);
  out.cell[v] = m.cell;
  out.in_r[v] = m.inside ? 1 : 0;
  if (shape) out.in_o[v] = shape->contains(x) ? 1 : 0;
}

template <int D>
GridLabels<D> allocate(const Grid<D>& grid, const Shape<D>* shape) {
  GridLabels<D> out;
  out.cell.assign(grid.size(), -1);
  out.in_r.assign(grid.size(), 0);
  if (shape) out.in_o.assign(grid.size(), 0);
  return out;
}

}  // namespace

template <int D>
GridLabels<D> classify_grid_serial(const Grid<D>& grid, const Arrangement<D>& arr, const SectionSet<D>& sections,
                                   const Shape<D>* shape) {
  GridLabels<D> out = allocate(grid, shape);
  for (std::size_t v = 0; v < grid.size(); ++v) label_voxel(v, grid, arr, sections, shape, out);
  return out;
}

template <int D>
GridLabels<D> classify_grid_parallel(const Grid<D>& grid, const Arrangement<D>& arr, const SectionSet<D>& sections,
                                     const Shape<D>* shape) {
  GridLabels<D> out = allocate(grid, shape);
  const long long total = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long long v = 0; v < total; ++v) label_voxel(static_cast<std::size_t>(v), grid, arr, sections, shape, out);
  return out;
}

template struct Grid<2>;
template struct Grid<3>;
template GridLabels<2> classify_grid_serial(const Grid<2>&, const Arrangement<2>&, const SectionSet<2>&,
                                            const Shape<2>*);
template GridLabels<3> classify_grid_serial(const Grid<3>&, const Arrangement<3>&, const SectionSet<3>&,
                                            const Shape<3>*);
template GridLabels<2> classify_grid_parallel(const Grid<2>&, const Arrangement<2>&, const SectionSet<2>&,
                                              const Shape<2>*);
template GridLabels<3> classify_grid_parallel(const Grid<3>&, const Arrangement<3>&, const SectionSet<3>&,
                                              const Shape<3>*);

}  // namespace xsect
