#include "xsect/sections.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xsect {

template <int D>
SectionSet<D>::SectionSet(const std::vector<Hyperplane<D>>& planes) {
  for (const auto& h : planes) planes_.push_back({h, PlaneFrame<D>::canonical(h), {}, {}});
}

template <int D>
SectionSet<D>::SectionSet(const std::vector<Hyperplane<D>>& planes, std::vector<PlaneFrame<D>> frames) {
  if (frames.size() != planes.size()) throw ValidationError("sections", "one frame per plane is required");
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const auto& h = planes[i];
    const auto& f = frames[i];
    const std::string where = "sections[" + std::to_string(i) + "].basis";
    if (std::abs(signed_distance(f.origin, h)) > 1e-9 * (1.0 + std::abs(h.offset)))
      throw ValidationError(where, "origin is not on the plane");
    if constexpr (D == 3) {
      if (std::abs(norm(f.u) - 1.0) > 1e-9 || std::abs(norm(f.v) - 1.0) > 1e-9 || std::abs(dot(f.u, f.v)) > 1e-9 ||
          std::abs(dot(f.u, h.normal)) > 1e-9 || std::abs(dot(f.v, h.normal)) > 1e-9)
        throw ValidationError(where, "u, v must be orthonormal and tangent to the plane");
    } else {
      if (std::abs(norm(f.dir) - 1.0) > 1e-9 || std::abs(dot(f.dir, h.normal)) > 1e-9)
        throw ValidationError(where, "dir must be a unit tangent of the line");
    }
    planes_.push_back({h, f, {}, {}});
  }
}

template <int D>
void SectionSet<D>::add(int plane, Region<D> region) {
  auto& ps = planes_.at(static_cast<std::size_t>(plane));
  if constexpr (D == 3) {
    if (region.outer.size() < 3) throw ValidationError("section", "outer loop needs at least 3 vertices");
    if (signed_area(region.outer) < 0) std::reverse(region.outer.begin(), region.outer.end());
    for (auto& h : region.holes)
      if (signed_area(h) > 0) std::reverse(h.begin(), h.end());
    ps.bounds.push_back(bounds_of(region.outer));
  } else {
    if (!(region.hi >= region.lo)) throw ValidationError("section", "interval with hi < lo");
  }
  ps.regions.push_back(std::move(region));
}

template <int D>
int SectionSet<D>::total() const {
  int n = 0;
  for (const auto& p : planes_) n += static_cast<int>(p.regions.size());
  return n;
}

template <int D>
int SectionSet<D>::global_id(int plane, int region) const {
  int n = 0;
  for (int i = 0; i < plane; ++i) n += static_cast<int>(planes_[static_cast<std::size_t>(i)].regions.size());
  return n + region;
}

template <int D>
std::pair<int, int> SectionSet<D>::from_global(int id) const {
  for (int i = 0; i < plane_count(); ++i) {
    const int n = static_cast<int>(planes_[static_cast<std::size_t>(i)].regions.size());
    if (id < n) return {i, id};
    id -= n;
  }
  throw GeometryError("section id out of range");
}

template <int D>
int SectionSet<D>::find(int plane, const Vec<D>& x, const Tolerance& tol) const {
  const auto& ps = planes_.at(static_cast<std::size_t>(plane));
  const auto local = ps.frame.to_local(x);
  for (std::size_t r = 0; r < ps.regions.size(); ++r) {
    if constexpr (D == 2) {
      if (ps.regions[r].contains(local, tol.eps_geom)) return static_cast<int>(r);
    } else {
      if (!ps.bounds[r].contains(local, tol.eps_geom)) continue;
      if (point_in_polygon(local, ps.regions[r], tol) != Location::Outside) return static_cast<int>(r);
    }
  }
  return -1;
}

template class SectionSet<2>;
template class SectionSet<3>;

}  // namespace xsect
