#include "xsect/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace xsect {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

struct PointLess {
  bool operator()(const exact::PointQ& a, const exact::PointQ& b) const {
    const int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    return a.y < b.y;
  }
};

}  // namespace

TopologySummary betti_2d(const std::vector<exact::PolygonQ>& polys) {
  UnionFind uf(polys.size());
  std::map<exact::PointQ, int, PointLess> owner;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto& p = polys[i];
    if (!exact::is_simple(p.outer) || exact::twice_area(p.outer) <= 0)
      throw GeometryError("betti_2d: outer loop must be simple and counter-clockwise");
    for (const auto& h : p.holes)
      if (!exact::is_simple(h) || exact::twice_area(h) >= 0)
        throw GeometryError("betti_2d: hole loops must be simple and clockwise");
    auto note = [&](const exact::LoopQ& l) {
      for (const auto& v : l) {
        auto [it, fresh] = owner.emplace(v, static_cast<int>(i));
        if (!fresh) uf.unite(it->second, static_cast<int>(i));
      }
    };
    note(p.outer);
    for (const auto& h : p.holes) note(h);
  }
  std::map<int, int> holes_by_root;
  for (std::size_t i = 0; i < polys.size(); ++i) holes_by_root[uf.find(static_cast<int>(i))] += static_cast<int>(polys[i].holes.size());
  TopologySummary t;
  t.beta0 = static_cast<int>(holes_by_root.size());
  for (const auto& [root, h] : holes_by_root) {
    t.per_component_holes.push_back(h);
    t.beta1 += h;
  }
  std::sort(t.per_component_holes.begin(), t.per_component_holes.end());
  t.euler = t.beta0 - t.beta1;
  return t;
}

TopologySummary betti_2d(const Shape<2>& shape) {
  TopologySummary t;
  for (const auto& c : shape.components()) {
    const int h = c.kind == PrimitiveKind::Annulus2D ? 1 : 0;
    t.per_component_holes.push_back(h);
    t.beta1 += h;
  }
  t.beta0 = static_cast<int>(shape.components().size());
  std::sort(t.per_component_holes.begin(), t.per_component_holes.end());
  t.euler = t.beta0 - t.beta1;
  return t;
}

namespace {

template <int D>
std::size_t flat(const std::array<int, D>& i, const std::array<int, D>& n) {
  std::size_t idx = 0;
  for (int k = D - 1; k >= 0; --k) idx = idx * static_cast<std::size_t>(n[k]) + static_cast<std::size_t>(i[k]);
  return idx;
}

template <int D>
std::array<int, D> unflat(std::size_t idx, const std::array<int, D>& n) {
  std::array<int, D> i{};
  for (int k = 0; k < D; ++k) {
    i[k] = static_cast<int>(idx % static_cast<std::size_t>(n[k]));
    idx /= static_cast<std::size_t>(n[k]);
  }
  return i;
}

// Cells of the union of closed voxel cubes whose lowest corner is the lattice
// point `c` (corners run over 0..n[k] per axis). The cell spanning the axes in
// `mask` exists when one of the voxels sharing it is occupied.
template <int D>
void count_at(const std::vector<std::uint8_t>& occ, const std::array<int, D>& n, const std::array<int, D>& c,
              CubicalCounts<D>& acc) {
  auto occupied = [&](const std::array<int, D>& j) {
    for (int k = 0; k < D; ++k)
      if (j[k] < 0 || j[k] >= n[k]) return false;
    return occ[flat<D>(j, n)] != 0;
  };
  for (int mask = 0; mask < (1 << D); ++mask) {
    bool fits = true;
    for (int k = 0; k < D; ++k)
      if ((mask & (1 << k)) && c[k] >= n[k]) fits = false;
    if (!fits) continue;
    const int free = ((1 << D) - 1) & ~mask;
    bool present = false;
    // Voxels containing the cell: index c[k] on spanned axes, c[k] - 1 or
    // c[k] on the others.
    for (int sub = free;; sub = (sub - 1) & free) {
      std::array<int, D> j = c;
      for (int k = 0; k < D; ++k)
        if (sub & (1 << k)) --j[k];
      if (occupied(j)) {
        present = true;
        break;
      }
      if (sub == 0) break;
    }
    if (!present) continue;
    switch (__builtin_popcount(static_cast<unsigned>(mask))) {
      case 0: ++acc.v; break;
      case 1: ++acc.e; break;
      case 2: ++acc.f; break;
      default: ++acc.c; break;
    }
  }
}

template <int D>
std::array<int, D> corner_dims(const std::array<int, D>& n) {
  std::array<int, D> m = n;
  for (auto& x : m) ++x;
  return m;
}

template <int D>
std::size_t total_size(const std::array<int, D>& n) {
  std::size_t s = 1;
  for (int k = 0; k < D; ++k) s *= static_cast<std::size_t>(n[k]);
  return s;
}

}  // namespace

template <int D>
CubicalCounts<D> cubical_counts_serial(const std::vector<std::uint8_t>& occ, const std::array<int, D>& n) {
  CubicalCounts<D> acc;
  const auto m = corner_dims<D>(n);
  const std::size_t total = total_size<D>(m);
  for (std::size_t v = 0; v < total; ++v) count_at<D>(occ, n, unflat<D>(v, m), acc);
  return acc;
}

template <int D>
CubicalCounts<D> cubical_counts_parallel(const std::vector<std::uint8_t>& occ, const std::array<int, D>& n) {
  const auto m = corner_dims<D>(n);
  const long long total = static_cast<long long>(total_size<D>(m));
  long long v = 0, e = 0, f = 0, c = 0;
#pragma omp parallel for schedule(static) reduction(+ : v, e, f, c)
  for (long long idx = 0; idx < total; ++idx) {
    CubicalCounts<D> local;
    count_at<D>(occ, n, unflat<D>(static_cast<std::size_t>(idx), m), local);
    v += local.v;
    e += local.e;
    f += local.f;
    c += local.c;
  }
  return {v, e, f, c};
}

namespace {

// Components of {occ == want}; `full` selects 8/26 instead of 4/6 adjacency.
// Returns labels (-1 for voxels not in the set) and, per component, whether it
// touches the grid border.
template <int D>
int label_components(const std::vector<std::uint8_t>& occ, const std::array<int, D>& n, std::uint8_t want,
                     bool full, std::vector<int>& label, std::vector<bool>& border) {
  const std::size_t total = total_size<D>(n);
  label.assign(total, -1);
  border.clear();
  std::vector<std::array<int, D>> offsets;
  const int span = 1;
  std::array<int, D> o{};
  for (int code = 0; code < static_cast<int>(std::pow(3, D)); ++code) {
    int c = code, nz = 0;
    for (int k = 0; k < D; ++k) {
      o[k] = c % 3 - span;
      c /= 3;
      nz += o[k] != 0;
    }
    if (nz == 0 || (!full && nz != 1)) continue;
    offsets.push_back(o);
  }
  int comps = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < total; ++s) {
    if ((occ[s] != 0) != (want != 0) || label[s] >= 0) continue;
    label[s] = comps;
    bool touches = false;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const auto i = unflat<D>(cur, n);
      for (int k = 0; k < D; ++k)
        if (i[k] == 0 || i[k] == n[k] - 1) touches = true;
      for (const auto& d : offsets) {
        std::array<int, D> j = i;
        bool inside = true;
        for (int k = 0; k < D; ++k) {
          j[k] += d[k];
          inside = inside && j[k] >= 0 && j[k] < n[k];
        }
        if (!inside) continue;
        const std::size_t nb = flat<D>(j, n);
        if ((occ[nb] != 0) != (want != 0) || label[nb] >= 0) continue;
        label[nb] = comps;
        stack.push_back(nb);
      }
    }
    border.push_back(touches);
    ++comps;
  }
  return comps;
}

}  // namespace

template <int D>
int drop_unanchored_components(std::vector<std::uint8_t>& occ, const Grid<D>& grid, const std::vector<int>& cell_of,
                               const Arrangement<D>& arr) {
  if (occ.size() != grid.size() || cell_of.size() != grid.size())
    throw GeometryError("drop_unanchored_components: label size mismatch");
  const double near = 0.5 * std::sqrt(static_cast<double>(D)) * grid.max_step();
  // Voxels whose cube meets a face of their cell: cutting-plane faces anchor
  // the solid, any face (or the grid border) anchors the complement.
  std::vector<std::uint8_t> anchor_solid(occ.size(), 0), anchor_empty(occ.size(), 0);
  const long long total = static_cast<long long>(occ.size());
#pragma omp parallel for schedule(static)
  for (long long iv = 0; iv < total; ++iv) {
    const std::size_t v = static_cast<std::size_t>(iv);
    const auto idx = grid.unindex(v);
    for (int k = 0; k < D; ++k)
      if (idx[k] == 0 || idx[k] == grid.n[k] - 1) anchor_empty[v] = 1;
    if (cell_of[v] < 0) continue;
    const Vec<D> x = grid.center(idx);
    for (const auto& f : arr.cell(cell_of[v]).faces) {
      if (f.interior_distance(x) > near) continue;
      anchor_empty[v] = 1;
      if (!f.is_bbox()) anchor_solid[v] = 1;
    }
  }
  int flipped = 0;
  std::vector<int> label;
  std::vector<bool> border;
  for (const std::uint8_t want : {std::uint8_t{1}, std::uint8_t{0}}) {
    const int comps = label_components<D>(occ, grid.n, want, want == 1, label, border);
    std::vector<bool> anchored(static_cast<std::size_t>(comps), false);
    const auto& anchors = want == 1 ? anchor_solid : anchor_empty;
    for (std::size_t v = 0; v < occ.size(); ++v)
      if (label[v] >= 0 && anchors[v]) anchored[static_cast<std::size_t>(label[v])] = true;
    for (std::size_t v = 0; v < occ.size(); ++v)
      if (label[v] >= 0 && !anchored[static_cast<std::size_t>(label[v])]) {
        occ[v] = want == 1 ? 0 : 1;
        ++flipped;
      }
  }
  return flipped;
}

template <int D>
TopologySummary cubical_betti(const std::vector<std::uint8_t>& occ, const std::array<int, D>& n) {
  if (occ.size() != total_size<D>(n)) throw GeometryError("cubical_betti: occupancy size mismatch");
  TopologySummary t;
  std::vector<int> label;
  std::vector<bool> border;
  t.beta0 = label_components<D>(occ, n, 1, true, label, border);
  const int comp = label_components<D>(occ, n, 0, false, label, border);
  int bounded = 0;
  for (int k = 0; k < comp; ++k) bounded += border[static_cast<std::size_t>(k)] ? 0 : 1;
  const CubicalCounts<D> counts = cubical_counts_parallel<D>(occ, n);
  t.euler = counts.euler();
  if constexpr (D == 2) {
    t.beta1 = static_cast<int>(t.beta0 - t.euler);
    if (t.beta1 != bounded) throw GeometryError("cubical_betti: Euler characteristic disagrees with hole count");
  } else {
    t.beta2 = bounded;
    t.beta1 = static_cast<int>(t.beta0 + t.beta2 - t.euler);
  }
  return t;
}

template <int D>
std::vector<int> sections_of_cell(const Cell<D>& cell, const Arrangement<D>& arr, const SectionSet<D>& sections) {
  std::vector<int> out;
  const double eps = arr.tolerance().eps_geom;
  for (const auto& f : cell.faces) {
    if (f.is_bbox()) continue;
    const auto& ps = sections.on_plane(f.plane_id);
    for (std::size_t r = 0; r < ps.regions.size(); ++r) {
      bool touches = false;
      if constexpr (D == 2) {
        const double s0 = ps.frame.to_local(f.vertices[0]), s1 = ps.frame.to_local(f.vertices[1]);
        const Interval& iv = ps.regions[r];
        touches = iv.hi >= std::min(s0, s1) - eps && iv.lo <= std::max(s0, s1) + eps;
      } else {
        Loop face_local;
        for (const auto& v : f.vertices) face_local.push_back(ps.frame.to_local(v));
        const Loop clipped = clip_to_convex(ps.regions[r].outer, face_local);
        touches = clipped.size() >= 3 && std::abs(signed_area(clipped)) > eps * eps;
      }
      if (touches) out.push_back(sections.global_id(f.plane_id, static_cast<int>(r)));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Half of the full neighbourhood: offsets in {-1,0,1}^D that are
// lexicographically positive, so each adjacent pair is visited once.
template <int D>
const std::vector<std::array<int, D>>& forward_offsets() {
  static const std::vector<std::array<int, D>> offs = [] {
    std::vector<std::array<int, D>> out;
    std::array<int, D> o{};
    const int total = D == 2 ? 9 : 27;
    for (int c = 0; c < total; ++c) {
      int r = c;
      for (int k = 0; k < D; ++k) {
        o[k] = r % 3 - 1;
        r /= 3;
      }
      for (int k = D - 1; k >= 0; --k) {
        if (o[k] > 0) {
          out.push_back(o);
          break;
        }
        if (o[k] < 0) break;
      }
    }
    return out;
  }();
  return offs;
}

double region_distance(double s, const Interval& iv) { return std::max({iv.lo - s, s - iv.hi, 0.0}); }

double region_distance(const Vec2& x, const PolygonWithHoles& poly) {
  double d = std::numeric_limits<double>::infinity();
  auto scan = [&](const Loop& l) {
    for (std::size_t i = 0; i < l.size(); ++i) d = std::min(d, distance_to_segment(x, l[i], l[(i + 1) % l.size()]));
  };
  scan(poly.outer);
  for (const auto& h : poly.holes) scan(h);
  return d;
}

template <int D>
ConnectivityPartition partition_from_voxels(const Cell<D>& cell, const Arrangement<D>& arr,
                                            const SectionSet<D>& sections, const Grid<D>& grid,
                                            const std::vector<int>& cell_of, const std::vector<std::uint8_t>& occ,
                                            const std::vector<std::size_t>& voxels, std::vector<int>* unlinked,
                                            bool link_nearest = false) {
  const std::vector<int> secs = sections_of_cell(cell, arr, sections);
  std::map<int, int> sec_node;
  UnionFind uf(secs.size());
  for (std::size_t i = 0; i < secs.size(); ++i) sec_node[secs[i]] = static_cast<int>(i);
  std::vector<bool> linked(secs.size(), false);
  std::map<std::size_t, int> vox_node;
  for (std::size_t v : voxels)
    if (occ[v]) vox_node[v] = uf.add();

  const Tolerance& tol = arr.tolerance();
  const double reach = 1.5 * grid.max_step();
  for (const auto& [v, node] : vox_node) {
    const auto idx = grid.unindex(v);
    // Full (8 / 26) adjacency: thin slivers of a cell are often only
    // diagonally connected at voxel resolution.
    for (const auto& off : forward_offsets<D>()) {
      auto j = idx;
      bool ok = true;
      for (int k = 0; k < D; ++k) {
        j[k] += off[k];
        ok = ok && j[k] >= 0 && j[k] < grid.n[k];
      }
      if (!ok) continue;
      const std::size_t nb = grid.index(j);
      if (cell_of[nb] != cell.id || !occ[nb]) continue;
      uf.unite(node, vox_node.at(nb));
    }
    const Vec<D> x = grid.center(idx);
    if (link_nearest) {
      // A point of R and its nearest point on the cell boundary are joined by
      // a segment inside R, so the section holding that nearest point is in
      // the same component.
      const auto nf = nearest_face(x, cell, tol);
      for (std::size_t k = 0; k < nf.faces.size(); ++k) {
        const auto& f = cell.faces[static_cast<std::size_t>(nf.faces[k])];
        if (f.is_bbox()) continue;
        const int r = sections.find(f.plane_id, nf.points[k], tol);
        if (r < 0) continue;
        auto it = sec_node.find(sections.global_id(f.plane_id, r));
        if (it == sec_node.end()) continue;
        uf.unite(node, it->second);
        linked[static_cast<std::size_t>(it->second)] = true;
      }
    }
    for (const auto& f : cell.faces) {
      if (f.is_bbox() || f.interior_distance(x) > reach) continue;
      const Vec<D> p = f.plane.project(x);
      if (!cell.contains(p, tol.eps_geom)) continue;
      int r = sections.find(f.plane_id, p, tol);
      if (r < 0 && !link_nearest) {
        // Polygonized sections sit slightly inside the true cross-section, so
        // a voxel hugging the shape boundary may project just outside them;
        // accept the closest section within the same radius.
        const double dp = f.interior_distance(x);
        double best = reach * reach - dp * dp;
        const auto& ps = sections.on_plane(f.plane_id);
        const auto local = ps.frame.to_local(p);
        for (std::size_t q = 0; q < ps.regions.size(); ++q) {
          const double d = region_distance(local, ps.regions[q]);
          if (d * d <= best) {
            best = d * d;
            r = static_cast<int>(q);
          }
        }
      }
      if (r < 0) continue;
      auto it = sec_node.find(sections.global_id(f.plane_id, r));
      if (it == sec_node.end()) continue;
      uf.unite(node, it->second);
      linked[static_cast<std::size_t>(it->second)] = true;
    }
  }

  // Sections on adjacent faces that meet along the common edge (2D: vertex).
  for (std::size_t a = 0; a < cell.faces.size(); ++a)
    for (std::size_t b = a + 1; b < cell.faces.size(); ++b) {
      const auto& fa = cell.faces[a];
      const auto& fb = cell.faces[b];
      if (fa.is_bbox() || fb.is_bbox()) continue;
      std::vector<Vec<D>> common;
      for (const auto& v : fa.vertices)
        if (std::abs(fb.interior_distance(v)) <= 1e3 * tol.eps_geom) common.push_back(v);
      if (common.empty()) continue;
      std::vector<Vec<D>> probes;
      if (common.size() == 1) {
        probes = common;
      } else {
        Vec<D> p0 = common.front(), p1 = common.front();
        double best = 0.0;
        for (const auto& u : common)
          for (const auto& w : common)
            if (distance(u, w) > best) {
              best = distance(u, w);
              p0 = u;
              p1 = w;
            }
        const int m = std::max(2, static_cast<int>(std::ceil(4.0 * best / grid.max_step())));
        for (int s = 0; s <= m; ++s) probes.push_back(p0 + (p1 - p0) * (static_cast<double>(s) / m));
      }
      for (const auto& p : probes) {
        const int ra = sections.find(fa.plane_id, p, tol), rb = sections.find(fb.plane_id, p, tol);
        if (ra < 0 || rb < 0) continue;
        auto ia = sec_node.find(sections.global_id(fa.plane_id, ra));
        auto ib = sec_node.find(sections.global_id(fb.plane_id, rb));
        if (ia != sec_node.end() && ib != sec_node.end()) uf.unite(ia->second, ib->second);
      }
    }

  std::map<int, std::vector<int>> blocks;
  for (std::size_t i = 0; i < secs.size(); ++i) blocks[uf.find(static_cast<int>(i))].push_back(secs[i]);
  ConnectivityPartition part;
  for (auto& [root, ids] : blocks) part.blocks.push_back(ids);
  std::sort(part.blocks.begin(), part.blocks.end());
  std::set<int> voxel_roots;
  for (const auto& [v, node] : vox_node) voxel_roots.insert(uf.find(node));
  for (int root : voxel_roots)
    if (!blocks.count(root)) ++part.untouched_components;
  if (unlinked) {
    unlinked->clear();
    for (std::size_t i = 0; i < secs.size(); ++i)
      if (!linked[i]) unlinked->push_back(secs[i]);
  }
  return part;
}

// Sections that no voxel of one side reaches are below grid resolution and
// cannot be judged; both partitions are compared with them removed.
ConnectivityPartition without(const ConnectivityPartition& p, const std::set<int>& drop) {
  ConnectivityPartition out;
  out.untouched_components = p.untouched_components;
  for (const auto& b : p.blocks) {
    std::vector<int> kept;
    for (int id : b)
      if (!drop.count(id)) kept.push_back(id);
    if (!kept.empty()) out.blocks.push_back(kept);
  }
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

void settle(BijectionResult& r, const std::vector<int>& unlinked_o, const std::vector<int>& unlinked_r) {
  std::set<int> drop(unlinked_o.begin(), unlinked_o.end());
  drop.insert(unlinked_r.begin(), unlinked_r.end());
  r.unlinked_sections = static_cast<int>(drop.size());
  r.match = without(r.from_o, drop) == without(r.from_r, drop);
}

template <int D>
std::vector<std::size_t> voxels_of_cell(int cell_id, const std::vector<int>& cell_of) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < cell_of.size(); ++v)
    if (cell_of[v] == cell_id) out.push_back(v);
  return out;
}

}  // namespace

template <int D>
ConnectivityPartition section_partition(int cell_id, const Arrangement<D>& arr, const SectionSet<D>& sections,
                                        const Grid<D>& grid, const std::vector<int>& cell_of,
                                        const std::vector<std::uint8_t>& occ, int* unlinked,
                                        bool occ_is_reconstruction) {
  std::vector<int> ids;
  ConnectivityPartition part = partition_from_voxels(arr.cell(cell_id), arr, sections, grid, cell_of, occ,
                                                     voxels_of_cell<D>(cell_id, cell_of), &ids, occ_is_reconstruction);
  if (unlinked) *unlinked = static_cast<int>(ids.size());
  return part;
}

template <int D>
BijectionResult component_bijection(int cell_id, const Arrangement<D>& arr, const SectionSet<D>& sections,
                                    const Grid<D>& grid, const GridLabels<D>& labels) {
  if (labels.in_o.empty()) throw GeometryError("component_bijection needs ground-truth labels");
  const auto voxels = voxels_of_cell<D>(cell_id, labels.cell);
  BijectionResult r;
  std::vector<int> unlinked_o, unlinked_r;
  r.from_o = partition_from_voxels(arr.cell(cell_id), arr, sections, grid, labels.cell, labels.in_o, voxels, &unlinked_o);
  r.from_r = partition_from_voxels(arr.cell(cell_id), arr, sections, grid, labels.cell, labels.in_r, voxels, &unlinked_r, true);
  settle(r, unlinked_o, unlinked_r);
  return r;
}

namespace {

std::vector<std::vector<std::size_t>> bucket_voxels(std::size_t n_cells, const std::vector<int>& cell_of) {
  std::vector<std::vector<std::size_t>> out(n_cells);
  for (std::size_t v = 0; v < cell_of.size(); ++v)
    if (cell_of[v] >= 0) out[static_cast<std::size_t>(cell_of[v])].push_back(v);
  return out;
}

}  // namespace

template <int D>
std::vector<ConnectivityPartition> section_partitions_all(const Arrangement<D>& arr, const SectionSet<D>& sections,
                                                          const Grid<D>& grid, const std::vector<int>& cell_of,
                                                          const std::vector<std::uint8_t>& occ,
                                                          bool occ_is_reconstruction) {
  const auto buckets = bucket_voxels(arr.cells().size(), cell_of);
  std::vector<ConnectivityPartition> out;
  for (const auto& cell : arr.cells())
    out.push_back(partition_from_voxels(cell, arr, sections, grid, cell_of, occ,
                                        buckets[static_cast<std::size_t>(cell.id)], nullptr,
                                        occ_is_reconstruction));
  return out;
}

template <int D>
std::vector<BijectionResult> component_bijection_all(const Arrangement<D>& arr, const SectionSet<D>& sections,
                                                     const Grid<D>& grid, const GridLabels<D>& labels) {
  if (labels.in_o.empty()) throw GeometryError("component_bijection needs ground-truth labels");
  const auto buckets = bucket_voxels(arr.cells().size(), labels.cell);
  std::vector<BijectionResult> out;
  for (const auto& cell : arr.cells()) {
    const auto& voxels = buckets[static_cast<std::size_t>(cell.id)];
    BijectionResult r;
    std::vector<int> unlinked_o, unlinked_r;
    r.from_o = partition_from_voxels(cell, arr, sections, grid, labels.cell, labels.in_o, voxels, &unlinked_o);
    r.from_r = partition_from_voxels(cell, arr, sections, grid, labels.cell, labels.in_r, voxels, &unlinked_r, true);
    settle(r, unlinked_o, unlinked_r);
    out.push_back(std::move(r));
  }
  return out;
}

template CubicalCounts<2> cubical_counts_serial<2>(const std::vector<std::uint8_t>&, const std::array<int, 2>&);
template CubicalCounts<3> cubical_counts_serial<3>(const std::vector<std::uint8_t>&, const std::array<int, 3>&);
template CubicalCounts<2> cubical_counts_parallel<2>(const std::vector<std::uint8_t>&, const std::array<int, 2>&);
template CubicalCounts<3> cubical_counts_parallel<3>(const std::vector<std::uint8_t>&, const std::array<int, 3>&);
template int drop_unanchored_components(std::vector<std::uint8_t>&, const Grid<2>&, const std::vector<int>&,
                                        const Arrangement<2>&);
template int drop_unanchored_components(std::vector<std::uint8_t>&, const Grid<3>&, const std::vector<int>&,
                                        const Arrangement<3>&);
template TopologySummary cubical_betti<2>(const std::vector<std::uint8_t>&, const std::array<int, 2>&);
template TopologySummary cubical_betti<3>(const std::vector<std::uint8_t>&, const std::array<int, 3>&);
template std::vector<int> sections_of_cell(const Cell<2>&, const Arrangement<2>&, const SectionSet<2>&);
template std::vector<int> sections_of_cell(const Cell<3>&, const Arrangement<3>&, const SectionSet<3>&);
template ConnectivityPartition section_partition(int, const Arrangement<2>&, const SectionSet<2>&, const Grid<2>&,
                                                 const std::vector<int>&, const std::vector<std::uint8_t>&, int*, bool);
template ConnectivityPartition section_partition(int, const Arrangement<3>&, const SectionSet<3>&, const Grid<3>&,
                                                 const std::vector<int>&, const std::vector<std::uint8_t>&, int*, bool);
template BijectionResult component_bijection(int, const Arrangement<2>&, const SectionSet<2>&, const Grid<2>&,
                                             const GridLabels<2>&);
template BijectionResult component_bijection(int, const Arrangement<3>&, const SectionSet<3>&, const Grid<3>&,
                                             const GridLabels<3>&);

template std::vector<ConnectivityPartition> section_partitions_all(const Arrangement<2>&, const SectionSet<2>&,
                                                                   const Grid<2>&, const std::vector<int>&,
                                                                   const std::vector<std::uint8_t>&, bool);
template std::vector<ConnectivityPartition> section_partitions_all(const Arrangement<3>&, const SectionSet<3>&,
                                                                   const Grid<3>&, const std::vector<int>&,
                                                                   const std::vector<std::uint8_t>&, bool);
template std::vector<BijectionResult> component_bijection_all(const Arrangement<2>&, const SectionSet<2>&,
                                                              const Grid<2>&, const GridLabels<2>&);
template std::vector<BijectionResult> component_bijection_all(const Arrangement<3>&, const SectionSet<3>&,
                                                              const Grid<3>&, const GridLabels<3>&);

}  // namespace xsect
