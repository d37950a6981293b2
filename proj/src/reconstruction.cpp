#include "xsect/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace xsect {

template <int D>
Membership<D> classify_point(const Vec<D>& x, const Arrangement<D>& arr, const SectionSet<D>& sections) {
  Membership<D> m;
  m.cell = arr.locate(x);
  const Cell<D>& c = arr.cell(m.cell);
  const auto nf = nearest_face(x, c, arr.tolerance());
  for (std::size_t k = 0; k < nf.faces.size(); ++k) {
    const Face<D>& f = c.faces[static_cast<std::size_t>(nf.faces[k])];
    if (f.is_bbox()) continue;
    if (sections.find(f.plane_id, nf.points[k], arr.tolerance()) >= 0) {
      m.inside = true;
      break;
    }
  }
  return m;
}

template Membership<2> classify_point(const Vec2&, const Arrangement<2>&, const SectionSet<2>&);
template Membership<3> classify_point(const Vec3&, const Arrangement<3>&, const SectionSet<3>&);

namespace {

using exact::LoopQ;
using exact::PointQ;
using exact::PolygonQ;

// Half-plane a x + b y <= c, also used as a supporting line.
struct LineQ {
  mpq_class a, b, c;
};

struct ClipVertex {
  PointQ p;
  int carrier;  // line index of the edge leaving p
};

PointQ intersect(const LineQ& l1, const LineQ& l2) {
  const mpq_class det = l1.a * l2.b - l2.a * l1.b;
  if (det == 0) throw GeometryError("exact clipping: parallel carriers");
  return {(l1.c * l2.b - l2.c * l1.b) / det, (l1.a * l2.c - l2.a * l1.c) / det};
}

std::vector<ClipVertex> clip(const std::vector<ClipVertex>& poly, const std::vector<LineQ>& lines, int li) {
  const LineQ& L = lines[static_cast<std::size_t>(li)];
  const std::size_t n = poly.size();
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = sgn(L.a * poly[i].p.x + L.b * poly[i].p.y - L.c);
  std::vector<ClipVertex> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const int ci = poly[i].carrier;
    if (s[i] <= 0) {
      if (s[j] <= 0) {
        out.push_back(poly[i]);
      } else if (s[i] < 0) {
        out.push_back(poly[i]);
        out.push_back({intersect(lines[static_cast<std::size_t>(ci)], L), li});
      } else {
        out.push_back({poly[i].p, li});
      }
    } else if (s[j] < 0) {
      out.push_back({intersect(lines[static_cast<std::size_t>(ci)], L), ci});
    }
  }
  // Drop repeated points.
  std::vector<ClipVertex> clean;
  for (const auto& v : out)
    if (clean.empty() || !(clean.back().p == v.p)) clean.push_back(v);
  while (clean.size() > 1 && clean.front().p == clean.back().p) clean.pop_back();
  return clean;
}

mpq_class q(double v) { return mpq_class(v); }

}  // namespace

std::vector<LoopQ> reconstruction_pieces_2d(const Cell<2>& cell, const Arrangement<2>& arr,
                                           const SectionSet<2>& sections) {
  std::vector<LoopQ> out;
  const double eps = arr.tolerance().eps_geom;
  for (std::size_t fi = 0; fi < cell.faces.size(); ++fi) {
    const Face<2>& f = cell.faces[fi];
    if (f.is_bbox()) continue;
    const auto& ps = sections.on_plane(f.plane_id);
    if (ps.regions.empty()) continue;
    const double s0 = ps.frame.to_local(f.vertices[0]), s1 = ps.frame.to_local(f.vertices[1]);
    const double flo = std::min(s0, s1), fhi = std::max(s0, s1);
    for (const Interval& iv : ps.regions) {
      if (iv.hi < flo - eps || iv.lo > fhi + eps) continue;
      std::vector<LineQ> lines;
      // Padded bounding box as the starting polygon.
      const Box<2>& b = arr.bbox();
      const double pad = 1.0 + b.diameter();
      const mpq_class x0 = q(b.lo[0] - pad), x1 = q(b.hi[0] + pad), y0 = q(b.lo[1] - pad), y1 = q(b.hi[1] + pad);
      lines.push_back({0, -1, -y0});  // y >= y0
      lines.push_back({1, 0, x1});    // x <= x1
      lines.push_back({0, 1, y1});    // y <= y1
      lines.push_back({-1, 0, -x0});  // x >= x0
      std::vector<ClipVertex> poly{{{x0, y0}, 0}, {{x1, y0}, 1}, {{x1, y1}, 2}, {{x0, y1}, 3}};
      const mpq_class nfx = q(f.plane.normal[0]), nfy = q(f.plane.normal[1]), of = q(f.plane.offset);
      for (std::size_t gi = 0; gi < cell.faces.size(); ++gi) {
        const Face<2>& g = cell.faces[gi];
        const mpq_class ngx = q(g.plane.normal[0]), ngy = q(g.plane.normal[1]), og = q(g.plane.offset);
        lines.push_back({ngx, ngy, og});
        if (gi != fi) lines.push_back({ngx - nfx, ngy - nfy, og - of});
      }
      const mpq_class dx = q(ps.frame.dir[0]), dy = q(ps.frame.dir[1]);
      const mpq_class base = dx * q(ps.frame.origin[0]) + dy * q(ps.frame.origin[1]);
      lines.push_back({-dx, -dy, -(q(iv.lo) + base)});
      lines.push_back({dx, dy, q(iv.hi) + base});
      for (int li = 4; li < static_cast<int>(lines.size()) && poly.size() >= 3; ++li) {
        const LineQ& L = lines[static_cast<std::size_t>(li)];
        if (L.a == 0 && L.b == 0) {
          if (L.c < 0) poly.clear();
          continue;
        }
        poly = clip(poly, lines, li);
      }
      if (poly.size() < 3) continue;
      LoopQ loop;
      for (const auto& v : poly) loop.push_back(v.p);
      if (exact::twice_area(loop) <= 0) continue;
      out.push_back(std::move(loop));
    }
  }
  return out;
}

namespace {

struct PointLess {
  bool operator()(const PointQ& a, const PointQ& b) const {
    const int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    return a.y < b.y;
  }
};

struct DirectedEdge {
  PointQ from, to;
};

// Canonical supporting line: x + B y = C (non-horizontal) or y = C.
struct LineKey {
  bool horizontal;
  mpq_class B, C;
  bool operator<(const LineKey& o) const {
    if (horizontal != o.horizontal) return horizontal < o.horizontal;
    const int c = cmp(B, o.B);
    if (c != 0) return c < 0;
    return C < o.C;
  }
};

std::vector<DirectedEdge> cancel_shared_edges(const std::vector<LoopQ>& tiles) {
  struct Span {
    mpq_class lo, hi;
    int sign;
  };
  std::map<LineKey, std::vector<Span>> groups;
  for (const auto& t : tiles)
    for (std::size_t i = 0; i < t.size(); ++i) {
      const PointQ& p = t[i];
      const PointQ& r = t[(i + 1) % t.size()];
      if (p == r) continue;
      const mpq_class A = r.y - p.y, Bc = -(r.x - p.x);
      LineKey key;
      mpq_class tp, tr;
      if (A != 0) {
        key.horizontal = false;
        key.B = Bc / A;
        key.C = p.x + key.B * p.y;
        tp = p.y;
        tr = r.y;
      } else {
        key.horizontal = true;
        key.B = 0;
        key.C = p.y;
        tp = p.x;
        tr = r.x;
      }
      const int sign = tr > tp ? 1 : -1;
      groups[key].push_back({sign > 0 ? tp : tr, sign > 0 ? tr : tp, sign});
    }
  std::vector<DirectedEdge> out;
  for (auto& [key, spans] : groups) {
    std::vector<mpq_class> ts;
    for (const auto& s : spans) {
      ts.push_back(s.lo);
      ts.push_back(s.hi);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<int> delta(ts.size(), 0);
    auto pos = [&](const mpq_class& v) {
      return static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), v) - ts.begin());
    };
    for (const auto& s : spans) {
      delta[pos(s.lo)] += s.sign;
      delta[pos(s.hi)] -= s.sign;
    }
    auto point_at = [&](const mpq_class& t) {
      if (key.horizontal) return PointQ{t, key.C};
      return PointQ{key.C - key.B * t, t};
    };
    int net = 0;
    std::size_t run_start = 0;
    int run_net = 0;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      net += delta[k];
      if (std::abs(net) > 1) throw GeometryError("exact union: overlapping tiles");
      if (net != run_net) {
        if (run_net != 0) {
          const PointQ a = point_at(ts[run_start]), b = point_at(ts[k]);
          out.push_back(run_net > 0 ? DirectedEdge{a, b} : DirectedEdge{b, a});
        }
        run_start = k;
        run_net = net;
      }
    }
    if (run_net != 0) {
      const PointQ a = point_at(ts[run_start]), b = point_at(ts.back());
      out.push_back(run_net > 0 ? DirectedEdge{a, b} : DirectedEdge{b, a});
    }
  }
  return out;
}

std::vector<LoopQ> trace_loops(const std::vector<DirectedEdge>& edges) {
  std::map<PointQ, std::vector<std::size_t>, PointLess> outgoing;
  for (std::size_t i = 0; i < edges.size(); ++i) outgoing[edges[i].from].push_back(i);
  std::vector<bool> used(edges.size(), false);
  std::vector<LoopQ> loops;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (used[start]) continue;
    LoopQ loop;
    std::size_t cur = start;
    while (true) {
      used[cur] = true;
      loop.push_back(edges[cur].from);
      const PointQ& at = edges[cur].to;
      auto it = outgoing.find(at);
      if (it == outgoing.end()) throw GeometryError("exact union: open boundary chain");
      // First unused outgoing edge clockwise from the reversed incoming direction.
      const Vec2 din = (edges[cur].to.approx() - edges[cur].from.approx());
      const double ref = std::atan2(-din[1], -din[0]);
      std::size_t best = edges.size();
      double best_angle = 10.0;
      for (std::size_t e : it->second) {
        if (used[e] && e != start) continue;
        const Vec2 d = edges[e].to.approx() - edges[e].from.approx();
        double cw = ref - std::atan2(d[1], d[0]);
        while (cw <= 0) cw += 2 * 3.14159265358979323846;
        while (cw > 2 * 3.14159265358979323846) cw -= 2 * 3.14159265358979323846;
        if (cw < best_angle) {
          best_angle = cw;
          best = e;
        }
      }
      if (best == edges.size()) throw GeometryError("exact union: dangling boundary edge");
      if (best == start) break;
      cur = best;
    }
    // Remove collinear vertices.
    bool changed = true;
    while (changed && loop.size() > 3) {
      changed = false;
      for (std::size_t i = 0; i < loop.size(); ++i) {
        const PointQ& a = loop[(i + loop.size() - 1) % loop.size()];
        const PointQ& b = loop[i];
        const PointQ& c = loop[(i + 1) % loop.size()];
        if (exact::orient(a, b, c) == 0) {
          loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
    if (loop.size() >= 3) loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace

std::vector<PolygonQ> union_of_tiles(const std::vector<LoopQ>& tiles) {
  const auto loops = trace_loops(cancel_shared_edges(tiles));
  std::vector<PolygonQ> polys;
  std::vector<const LoopQ*> holes;
  for (const auto& l : loops) {
    if (exact::twice_area(l) > 0) polys.push_back({l, {}});
    else holes.push_back(&l);
  }
  std::vector<mpq_class> area(polys.size());
  for (std::size_t i = 0; i < polys.size(); ++i) area[i] = exact::twice_area(polys[i].outer);
  for (const LoopQ* h : holes) {
    std::size_t best = polys.size();
    for (std::size_t i = 0; i < polys.size(); ++i) {
      int where = 0;
      for (const auto& v : *h) {
        where = exact::locate(v, polys[i].outer);
        if (where != 0) break;
      }
      if (where > 0 && (best == polys.size() || area[i] < area[best])) best = i;
    }
    if (best == polys.size()) throw GeometryError("exact union: hole without enclosing boundary");
    polys[best].holes.push_back(*h);
  }
  return polys;
}

Reconstruction2D reconstruct_2d(const Arrangement<2>& arr, const SectionSet<2>& sections) {
  Reconstruction2D r;
  std::vector<LoopQ> all;
  for (const auto& c : arr.cells()) {
    auto pieces = reconstruction_pieces_2d(c, arr, sections);
    r.pieces += static_cast<int>(pieces.size());
    r.per_cell.push_back(union_of_tiles(pieces));
    all.insert(all.end(), pieces.begin(), pieces.end());
  }
  r.global = union_of_tiles(all);
  return r;
}

}  // namespace xsect
