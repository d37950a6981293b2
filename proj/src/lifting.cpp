#include "xsect/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace xsect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double coincidence_eps(const Tolerance& tol, double scale) { return tol.eps_geom * std::max(1.0, scale); }

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

template <int D>
LiftResult<D> lift_point(const Vec<D>& a, int face, const Cell<D>& cell, const Tolerance& tol) {
  const Face<D>& f = cell.faces.at(static_cast<std::size_t>(face));
  const double eps = coincidence_eps(tol, norm(a));
  if (std::abs(f.interior_distance(a)) > eps || !cell.contains(a, eps))
    throw GeometryError("lift_point: point is not on the given face");
  const Vec<D>& n = f.plane.normal;
  LiftResult<D> r;
  r.t_star = kInf;
  std::vector<double> t(cell.faces.size(), kInf);
  for (std::size_t i = 0; i < cell.faces.size(); ++i) {
    if (static_cast<int>(i) == face) continue;
    const double denom = 1.0 - dot(cell.faces[i].plane.normal, n);
    if (denom <= tol.eps_angle) continue;
    t[i] = std::max(cell.faces[i].interior_distance(a), 0.0) / denom;
    r.t_star = std::min(r.t_star, t[i]);
  }
  if (!std::isfinite(r.t_star)) {
    r.finite = false;
    r.lift_point = a;
    return r;
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] <= r.t_star + tol.eps_geom) r.opposing_faces.push_back(static_cast<int>(i));
  r.lift_point = a - n * r.t_star;
  return r;
}

LiftedPolyline lift_polyline(const Vec2& p, const Vec2& q, int face, const Cell<2>& cell, const Tolerance& tol) {
  const Face<2>& f = cell.faces.at(static_cast<std::size_t>(face));
  const Vec2& n = f.plane.normal;
  LiftedPolyline out;
  out.source_p = p;
  out.source_q = q;
  // Each candidate t_g(s) = d_g(p + s (q - p)) / (1 - n_g . n) is affine in s.
  struct Affine {
    double c0, c1;
    double at(double s) const { return c0 + c1 * s; }
  };
  std::vector<Affine> cand;
  for (std::size_t i = 0; i < cell.faces.size(); ++i) {
    if (static_cast<int>(i) == face) continue;
    const double denom = 1.0 - dot(cell.faces[i].plane.normal, n);
    if (denom <= tol.eps_angle) continue;
    const double d0 = cell.faces[i].interior_distance(p), d1 = cell.faces[i].interior_distance(q);
    cand.push_back({d0 / denom, (d1 - d0) / denom});
  }
  auto env = [&](double s) {
    double m = kInf;
    for (const auto& c : cand) m = std::min(m, c.at(s));
    return m;
  };
  // Validates endpoints (throws if off the face).
  lift_point(p, face, cell, tol);
  lift_point(q, face, cell, tol);
  if (distance(p, q) <= tol.eps_geom || cand.empty()) {
    out.params = {0.0};
    out.vertices = {lift_point(p, face, cell, tol).lift_point};
    if (distance(p, q) > tol.eps_geom) {
      out.params.push_back(1.0);
      out.vertices.push_back(lift_point(q, face, cell, tol).lift_point);
    }
    return out;
  }
  std::vector<double> s{0.0, 1.0};
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j) {
      const double dc = cand[i].c1 - cand[j].c1;
      if (std::abs(dc) < 1e-300) continue;
      const double x = (cand[j].c0 - cand[i].c0) / dc;
      if (x > 0.0 && x < 1.0) s.push_back(x);
    }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  // Keep only genuine kinks of the lower envelope.
  std::vector<double> keep{s.front()};
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double a = keep.back(), b = s[k], c = s[k + 1];
    const double lin = env(a) + (env(c) - env(a)) * (b - a) / (c - a);
    if (std::abs(env(b) - lin) > tol.eps_geom) keep.push_back(b);
  }
  keep.push_back(s.back());
  for (double si : keep) {
    out.params.push_back(si);
    out.vertices.push_back(p + (q - p) * si - n * env(si));
  }
  return out;
}

template <int D>
std::vector<OverlapComponent<D>> lift_overlap_components(const SectionSet<D>& sections, int plane_a, int region_a,
                                                         int f1, int plane_b, int region_b, int f2,
                                                         const Cell<D>& cell, double resolution,
                                                         const Tolerance& tol) {
  if (f1 == f2) throw GeometryError("lift_overlap_components needs two distinct faces");
  if (!(resolution > 0.0)) throw GeometryError("lift_overlap_components: resolution must be positive");
  const Face<D>& face1 = cell.faces.at(static_cast<std::size_t>(f1));
  const Face<D>& face2 = cell.faces.at(static_cast<std::size_t>(f2));
  const auto& ps = sections.on_plane(plane_a);
  const double eps = tol.eps_geom;

  // Sample points of A ∩ face1 on a regular lattice in the plane's frame.
  std::vector<Vec<D>> pts;
  std::vector<std::array<int, 2>> lattice;
  if constexpr (D == 2) {
    double lo = kInf, hi = -kInf;
    for (const auto& v : face1.vertices) {
      lo = std::min(lo, ps.frame.to_local(v));
      hi = std::max(hi, ps.frame.to_local(v));
    }
    const Interval& iv = ps.regions.at(static_cast<std::size_t>(region_a));
    lo = std::max(lo, iv.lo);
    hi = std::min(hi, iv.hi);
    if (hi < lo) return {};
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / resolution)));
    for (int i = 0; i <= n; ++i) {
      pts.push_back(ps.frame.to_world(lo + (hi - lo) * i / n));
      lattice.push_back({i, 0});
    }
  } else {
    Rect box{{kInf, kInf}, {-kInf, -kInf}};
    for (const auto& v : face1.vertices) {
      const Vec2 l = ps.frame.to_local(v);
      for (int k = 0; k < 2; ++k) {
        box.lo[k] = std::min(box.lo[k], l[k]);
        box.hi[k] = std::max(box.hi[k], l[k]);
      }
    }
    const Rect& rb = ps.bounds.at(static_cast<std::size_t>(region_a));
    for (int k = 0; k < 2; ++k) {
      box.lo[k] = std::max(box.lo[k], rb.lo[k]);
      box.hi[k] = std::min(box.hi[k], rb.hi[k]);
    }
    if (box.hi[0] < box.lo[0] || box.hi[1] < box.lo[1]) return {};
    const int nu = std::max(1, static_cast<int>(std::ceil((box.hi[0] - box.lo[0]) / resolution)));
    const int nv = std::max(1, static_cast<int>(std::ceil((box.hi[1] - box.lo[1]) / resolution)));
    for (int i = 0; i <= nu; ++i)
      for (int j = 0; j <= nv; ++j) {
        const Vec2 l{box.lo[0] + (box.hi[0] - box.lo[0]) * i / nu, box.lo[1] + (box.hi[1] - box.lo[1]) * j / nv};
        const Vec3 w = ps.frame.to_world(l);
        if (!cell.contains(w, eps)) continue;
        if (point_in_polygon(l, ps.regions[static_cast<std::size_t>(region_a)], tol) == Location::Outside) continue;
        pts.push_back(w);
        lattice.push_back({i, j});
      }
  }

  std::vector<int> hit_index(pts.size(), -1);
  std::vector<std::size_t> hits;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Vec<D> a = face1.plane.project(pts[k]);
    LiftResult<D> lr;
    try {
      lr = lift_point(a, f1, cell, tol);
    } catch (const GeometryError&) {
      continue;
    }
    if (!lr.finite) continue;
    if (std::find(lr.opposing_faces.begin(), lr.opposing_faces.end(), f2) == lr.opposing_faces.end()) continue;
    const Vec<D> b = face2.plane.project(lr.lift_point);
    if (sections.find(plane_b, b, tol) != region_b) continue;
    hit_index[k] = static_cast<int>(hits.size());
    hits.push_back(k);
  }
  DisjointSets ds(hits.size());
  std::map<std::array<int, 2>, int> at;
  for (std::size_t h = 0; h < hits.size(); ++h) at[lattice[hits[h]]] = static_cast<int>(h);
  for (std::size_t h = 0; h < hits.size(); ++h) {
    const auto l = lattice[hits[h]];
    for (const auto& nb : {std::array<int, 2>{l[0] + 1, l[1]}, std::array<int, 2>{l[0], l[1] + 1}}) {
      auto it = at.find(nb);
      if (it != at.end()) ds.unite(static_cast<int>(h), it->second);
    }
  }
  std::map<int, OverlapComponent<D>> comps;
  for (std::size_t h = 0; h < hits.size(); ++h) {
    auto& c = comps[ds.find(static_cast<int>(h))];
    if (c.samples++ == 0) c.representative = lift_point(face1.plane.project(pts[hits[h]]), f1, cell, tol).lift_point;
  }
  std::vector<OverlapComponent<D>> out;
  for (auto& [root, c] : comps) out.push_back(c);
  return out;
}

template LiftResult<2> lift_point(const Vec2&, int, const Cell<2>&, const Tolerance&);
template LiftResult<3> lift_point(const Vec3&, int, const Cell<3>&, const Tolerance&);
template std::vector<OverlapComponent<2>> lift_overlap_components(const SectionSet<2>&, int, int, int, int, int,
                                                                  int, const Cell<2>&, double, const Tolerance&);
template std::vector<OverlapComponent<3>> lift_overlap_components(const SectionSet<3>&, int, int, int, int, int,
                                                                  int, const Cell<3>&, double, const Tolerance&);

}  // namespace xsect
