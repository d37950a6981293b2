#include "xsect/convex.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "xsect/topology.hpp"

namespace xsect {

namespace {

bool in_convex_2d(const Loop& poly, const Vec2& p, double eps) {
  if (poly.empty()) return false;
  if (poly.size() == 1) return norm(p - poly[0]) <= eps;
  if (poly.size() == 2) return distance_to_segment(p, poly[0], poly[1]) <= eps;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
    const double len = norm(b - a);
    if (len > 0 && cross(b - a, p - a) / len < -eps) return false;
  }
  return true;
}

struct HullFace {
  int a, b, c;
  Vec3 n;
  double o;
  bool alive = true;
};

HullFace make_face(const std::vector<Vec3>& p, int a, int b, int c, const Vec3& inside) {
  Vec3 n = normalized(cross(p[static_cast<std::size_t>(b)] - p[static_cast<std::size_t>(a)],
                            p[static_cast<std::size_t>(c)] - p[static_cast<std::size_t>(a)]));
  double o = dot(n, p[static_cast<std::size_t>(a)]);
  if (dot(n, inside) - o > 0) {
    std::swap(b, c);
    n = n * -1.0;
    o = -o;
  }
  return {a, b, c, n, o, true};
}

}  // namespace

Loop convex_hull_2d(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a[0] == b[0] && a[1] == b[1]; }),
            pts.end());
  if (pts.size() < 3) return pts;
  Loop hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

ConvexHull3 convex_hull(const std::vector<Vec3>& pts, double eps) {
  ConvexHull3 out;
  if (pts.empty()) return out;
  auto far_from = [&](auto&& dist) {
    std::size_t best = 0;
    double bd = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (const double d = dist(pts[i]); d > bd) {
        bd = d;
        best = i;
      }
    return std::pair{best, bd};
  };
  const std::size_t i0 = 0;
  const auto [i1, d1] = far_from([&](const Vec3& x) { return distance(x, pts[i0]); });
  const Vec3 dir = d1 > eps ? normalized(pts[i1] - pts[i0]) : Vec3{1, 0, 0};
  const auto [i2, d2] = far_from([&](const Vec3& x) { return norm(cross(x - pts[i0], dir)); });
  if (d1 <= eps || d2 <= eps) {
    // Collinear data: keep it as a degenerate flat polygon.
    out.flat = true;
    Vec3 any = std::abs(dir[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    out.support = Hyperplane<3>(normalized(cross(dir, any)), dot(normalized(cross(dir, any)), pts[i0]));
    out.frame = PlaneFrame<3>::canonical(out.support);
    Loop local;
    for (const auto& p : pts) local.push_back(out.frame.to_local(p));
    out.polygon = convex_hull_2d(local);
    for (const auto& p : out.polygon) out.vertices.push_back(out.frame.to_world(p));
    return out;
  }
  const Vec3 n012 = normalized(cross(pts[i1] - pts[i0], pts[i2] - pts[i0]));
  const auto [i3, d3] = far_from([&](const Vec3& x) { return std::abs(dot(x - pts[i0], n012)); });
  if (d3 <= eps) {
    out.flat = true;
    out.support = Hyperplane<3>(n012, dot(n012, pts[i0]));
    out.frame = PlaneFrame<3>::canonical(out.support);
    Loop local;
    for (const auto& p : pts) local.push_back(out.frame.to_local(p));
    out.polygon = convex_hull_2d(local);
    for (const auto& p : out.polygon) out.vertices.push_back(out.frame.to_world(p));
    return out;
  }

  const int a = static_cast<int>(i0), b = static_cast<int>(i1), c = static_cast<int>(i2), d = static_cast<int>(i3);
  const Vec3 inside = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) * 0.25;
  std::vector<HullFace> faces = {make_face(pts, a, b, c, inside), make_face(pts, a, b, d, inside),
                                 make_face(pts, a, c, d, inside), make_face(pts, b, c, d, inside)};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int pi = static_cast<int>(i);
    if (pi == a || pi == b || pi == c || pi == d) continue;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && dot(faces[f].n, pts[i]) - faces[f].o > eps) visible.push_back(f);
    if (visible.empty()) continue;
    std::set<std::pair<int, int>> edges;
    for (std::size_t f : visible) {
      const auto& F = faces[f];
      edges.insert({F.a, F.b});
      edges.insert({F.b, F.c});
      edges.insert({F.c, F.a});
    }
    for (std::size_t f : visible) faces[f].alive = false;
    for (const auto& [u, v] : edges) {
      if (edges.count({v, u})) continue;
      HullFace nf{u, v, pi, {}, 0.0, true};
      nf.n = normalized(cross(pts[static_cast<std::size_t>(v)] - pts[static_cast<std::size_t>(u)],
                              pts[i] - pts[static_cast<std::size_t>(u)]));
      nf.o = dot(nf.n, pts[static_cast<std::size_t>(u)]);
      faces.push_back(nf);
    }
    if (faces.size() > 4 * pts.size() + 64) {
      faces.erase(std::remove_if(faces.begin(), faces.end(), [](const HullFace& f) { return !f.alive; }), faces.end());
    }
  }
  std::map<int, int> remap;
  for (const auto& f : faces) {
    if (!f.alive) continue;
    std::array<int, 3> tri{};
    const int ids[3] = {f.a, f.b, f.c};
    for (int k = 0; k < 3; ++k) {
      auto [it, fresh] = remap.emplace(ids[k], static_cast<int>(out.vertices.size()));
      if (fresh) out.vertices.push_back(pts[static_cast<std::size_t>(ids[k])]);
      tri[static_cast<std::size_t>(k)] = it->second;
    }
    out.triangles.push_back(tri);
    out.facets.push_back(Hyperplane<3>(f.n, f.o));
  }
  return out;
}

bool ConvexHull3::contains(const Vec3& x, double eps) const {
  if (flat) {
    if (std::abs(signed_distance(x, support)) > eps) return false;
    return in_convex_2d(polygon, frame.to_local(x), eps);
  }
  for (const auto& f : facets)
    if (signed_distance(x, f) > eps) return false;
  return !facets.empty();
}

template <>
bool ConvexPiece<3>::contains(const Vec3& x, double eps) const {
  return hull3.contains(x, eps);
}

template <>
bool ConvexPiece<2>::contains(const Vec2& x, double eps) const {
  return in_convex_2d(hull2, x, eps);
}

namespace {

// The part of a section lying on one face, as world points.
std::vector<Vec2> clipped_points(const PlaneSections<2>& ps, const Interval& iv, const Face<2>& f) {
  const double s0 = ps.frame.to_local(f.vertices[0]), s1 = ps.frame.to_local(f.vertices[1]);
  const double lo = std::max(iv.lo, std::min(s0, s1)), hi = std::min(iv.hi, std::max(s0, s1));
  if (lo > hi) return {};
  return {ps.frame.to_world(lo), ps.frame.to_world(hi)};
}

std::vector<Vec3> clipped_points(const PlaneSections<3>& ps, const PolygonWithHoles& poly, const Face<3>& f) {
  Loop face_local;
  for (const auto& v : f.vertices) face_local.push_back(ps.frame.to_local(v));
  std::vector<Vec3> out;
  for (const auto& p : clip_to_convex(poly.outer, face_local)) out.push_back(ps.frame.to_world(p));
  return out;
}

struct UF {
  std::vector<int> p;
  explicit UF(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[static_cast<std::size_t>(x)] == x ? x : p[static_cast<std::size_t>(x)] = find(p[static_cast<std::size_t>(x)]); }
  void unite(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

template <int D>
ConvReconstruction<D> reconstruct_convex_mode(const Arrangement<D>& arr, const SectionSet<D>& sections,
                                              const Grid<D>& grid, const GridLabels<D>& labels) {
  ConvReconstruction<D> out;
  const double eps = std::max(arr.tolerance().eps_geom, 1e-9 * arr.bbox().diameter());
  const auto partitions = section_partitions_all(arr, sections, grid, labels.cell, labels.in_r, true);
  for (const auto& cell : arr.cells()) {
    const ConnectivityPartition& part = partitions[static_cast<std::size_t>(cell.id)];
    for (const auto& block : part.blocks) {
      ConvexPiece<D> piece;
      piece.cell = cell.id;
      piece.sections = block;
      for (int gid : block) {
        const auto [plane, region] = sections.from_global(gid);
        const auto& ps = sections.on_plane(plane);
        for (const auto& f : cell.faces) {
          if (f.plane_id != plane) continue;
          const auto pts = clipped_points(ps, ps.regions[static_cast<std::size_t>(region)], f);
          piece.points.insert(piece.points.end(), pts.begin(), pts.end());
        }
      }
      if (piece.points.empty()) continue;
      if constexpr (D == 3) {
        piece.hull3 = convex_hull(piece.points, eps);
      } else {
        piece.hull2 = convex_hull_2d(piece.points);
      }
      out.pieces.push_back(std::move(piece));
    }
  }
  UF uf(out.pieces.size());
  std::map<int, int> first_piece;
  for (std::size_t i = 0; i < out.pieces.size(); ++i)
    for (int gid : out.pieces[i].sections) {
      auto [it, fresh] = first_piece.emplace(gid, static_cast<int>(i));
      if (!fresh) uf.unite(it->second, static_cast<int>(i));
    }
  std::set<int> roots;
  for (std::size_t i = 0; i < out.pieces.size(); ++i) roots.insert(uf.find(static_cast<int>(i)));
  out.beta0 = static_cast<int>(roots.size());
  return out;
}

namespace {

double contour_distance(const Interval& iv, double s) { return std::min(std::abs(s - iv.lo), std::abs(s - iv.hi)); }

double contour_distance(const PolygonWithHoles& poly, const Vec2& p) {
  double d = 1e300;
  auto scan = [&](const Loop& l) {
    for (std::size_t i = 0; i < l.size(); ++i) d = std::min(d, distance_to_segment(p, l[i], l[(i + 1) % l.size()]));
  };
  scan(poly.outer);
  for (const auto& h : poly.holes) scan(h);
  return d;
}

// Sample points on a face, in world coordinates.
std::vector<Vec2> face_samples(const Face<2>& f, int n) {
  std::vector<Vec2> out;
  for (int i = 0; i < n; ++i) out.push_back(f.vertices[0] + (f.vertices[1] - f.vertices[0]) * ((i + 0.5) / n));
  return out;
}

std::vector<Vec3> face_samples(const Face<3>& f, int n) {
  const PlaneFrame<3> frame = PlaneFrame<3>::canonical(f.plane);
  Loop local;
  for (const auto& v : f.vertices) local.push_back(frame.to_local(v));
  const Rect r = bounds_of(local);
  const int side = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(n))));
  std::vector<Vec3> out;
  PolygonWithHoles face_poly{local, {}};
  const Tolerance tight{1e-12, 1e-9};
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const Vec2 p{r.lo[0] + (i + 0.5) / side * (r.hi[0] - r.lo[0]), r.lo[1] + (j + 0.5) / side * (r.hi[1] - r.lo[1])};
      if (point_in_polygon(p, face_poly, tight) == Location::Inside) out.push_back(frame.to_world(p));
    }
  return out;
}

}  // namespace

template <int D>
ConformityResult check_conformity(const ConvReconstruction<D>& conv, const Arrangement<D>& arr,
                                  const SectionSet<D>& sections, int samples_per_face, double band) {
  ConformityResult res;
  const Tolerance& tol = arr.tolerance();
  const double eps = std::max(tol.eps_geom, 1e-7 * arr.bbox().diameter());
  for (const auto& cell : arr.cells()) {
    std::vector<const ConvexPiece<D>*> mine;
    for (const auto& p : conv.pieces)
      if (p.cell == cell.id) mine.push_back(&p);
    for (const auto& f : cell.faces) {
      if (f.is_bbox()) continue;
      const auto& ps = sections.on_plane(f.plane_id);
      for (const auto& x : face_samples(f, samples_per_face)) {
        bool near_contour = false;
        for (const auto& reg : ps.regions) near_contour = near_contour || contour_distance(reg, ps.frame.to_local(x)) < band;
        if (near_contour) continue;
        const bool in_sec = sections.find(f.plane_id, x, tol) >= 0;
        bool in_conv = false;
        for (const auto* p : mine) in_conv = in_conv || p->contains(x, eps);
        ++res.samples;
        if (in_sec != in_conv) ++res.mismatches;
      }
    }
  }
  res.pass = res.mismatches == 0;
  return res;
}

template ConvReconstruction<2> reconstruct_convex_mode(const Arrangement<2>&, const SectionSet<2>&, const Grid<2>&,
                                                       const GridLabels<2>&);
template ConvReconstruction<3> reconstruct_convex_mode(const Arrangement<3>&, const SectionSet<3>&, const Grid<3>&,
                                                       const GridLabels<3>&);
template ConformityResult check_conformity(const ConvReconstruction<2>&, const Arrangement<2>&, const SectionSet<2>&,
                                           int, double);
template ConformityResult check_conformity(const ConvReconstruction<3>&, const Arrangement<3>&, const SectionSet<3>&,
                                           int, double);

}  // namespace xsect
