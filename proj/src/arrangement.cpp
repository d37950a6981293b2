#include "xsect/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xsect/lp.hpp"

namespace xsect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <int D>
Hyperplane<D> wall_plane(const Box<D>& box, int wall) {
  // Walls 2k / 2k+1 are the low / high sides along axis k, outward oriented.
  Vec<D> n{};
  const int axis = wall / 2;
  if (wall % 2 == 0) {
    n[axis] = -1.0;
    Hyperplane<D> h;
    h.normal = n;
    h.offset = -box.lo[axis];
    return h;
  }
  n[axis] = 1.0;
  Hyperplane<D> h;
  h.normal = n;
  h.offset = box.hi[axis];
  return h;
}

std::string sign_key(const std::vector<std::int8_t>& signs) {
  std::string k(signs.size(), '0');
  for (std::size_t i = 0; i < signs.size(); ++i) k[i] = signs[i] > 0 ? '+' : '-';
  return k;
}

// ---------------------------------------------------------------- 2D build

struct Poly2 {
  std::vector<int> verts;     // canonical vertex ids, CCW
  std::vector<int> carriers;  // carrier of edge i -> i+1
};

class Builder2 {
 public:
  Builder2(const std::vector<Hyperplane<2>>& planes, const Box<2>& box, double eps)
      : planes_(planes), box_(box), eps_(eps) {}

  Hyperplane<2> carrier(int id) const {
    if (id >= 0) return planes_[static_cast<std::size_t>(id)];
    return wall_plane(box_, -1 - id);
  }

  int vertex(int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const Hyperplane<2> p = carrier(a), q = carrier(b);
    const double det = p.normal[0] * q.normal[1] - p.normal[1] * q.normal[0];
    if (std::abs(det) < 1e-300) throw GeometryError("parallel carriers intersected");
    const Vec2 x{(p.offset * q.normal[1] - q.offset * p.normal[1]) / det,
                 (p.normal[0] * q.offset - q.normal[0] * p.offset) / det};
    pool_.push_back(x);
    const int id = static_cast<int>(pool_.size()) - 1;
    cache_.emplace(key, id);
    return id;
  }

  Poly2 box_polygon() {
    // Walls: 0 x=lo, 1 x=hi, 2 y=lo, 3 y=hi; carrier ids -1-wall.
    const int w0 = -1, w1 = -2, w2 = -3, w3 = -4;
    Poly2 p;
    p.verts = {vertex(w0, w2), vertex(w1, w2), vertex(w1, w3), vertex(w0, w3)};
    p.carriers = {w2, w1, w3, w0};
    return p;
  }

  // Returns {negative part, positive part}; either may be empty.
  std::pair<Poly2, Poly2> split(const Poly2& poly, int k) {
    const Hyperplane<2>& h = planes_[static_cast<std::size_t>(k)];
    const std::size_t n = poly.verts.size();
    std::vector<int> s(n);
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = signed_distance(pool_[static_cast<std::size_t>(poly.verts[i])], h);
      s[i] = d > eps_ ? 1 : (d < -eps_ ? -1 : 0);
      has_pos |= s[i] > 0;
      has_neg |= s[i] < 0;
    }
    if (!has_pos) return {poly, {}};
    if (!has_neg) return {{}, poly};
    auto build = [&](int side) {
      Poly2 out;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const int c = poly.carriers[i];
        if (s[i] == side || s[i] == 0) {
          if (s[j] == -side) {
            if (s[i] == 0) {
              out.verts.push_back(poly.verts[i]);
              out.carriers.push_back(k);
            } else {
              out.verts.push_back(poly.verts[i]);
              out.carriers.push_back(c);
              out.verts.push_back(vertex(c, k));
              out.carriers.push_back(k);
            }
          } else {
            out.verts.push_back(poly.verts[i]);
            out.carriers.push_back(c);
          }
        } else if (s[j] == side) {
          out.verts.push_back(vertex(c, k));
          out.carriers.push_back(c);
        }
      }
      return out;
    };
    Poly2 neg = build(-1), pos = build(1);
    if (area(neg) <= eps_ * eps_) return {{}, poly};
    if (area(pos) <= eps_ * eps_) return {poly, {}};
    return {std::move(neg), std::move(pos)};
  }

  double area(const Poly2& p) const {
    if (p.verts.size() < 3) return 0.0;
    Loop l;
    for (int v : p.verts) l.push_back(pool_[static_cast<std::size_t>(v)]);
    return signed_area(l);
  }

  const std::vector<Vec2>& pool() const { return pool_; }

 private:
  const std::vector<Hyperplane<2>>& planes_;
  Box<2> box_;
  double eps_;
  std::map<std::pair<int, int>, int> cache_;
  std::vector<Vec2> pool_;
};

// ---------------------------------------------------------------- 3D build

struct FacePoly3 {
  Hyperplane<3> outward;
  int carrier;
  std::vector<Vec3> verts;
};
using Poly3 = std::vector<FacePoly3>;

std::vector<Vec3> clip_polygon(const std::vector<Vec3>& poly, const Hyperplane<3>& h, int keep, double eps,
                               std::vector<Vec3>& cut_points) {
  // keep = -1 keeps {sd <= 0}, +1 keeps {sd >= 0}.
  std::vector<Vec3> out;
  const std::size_t n = poly.size();
  std::vector<double> sd(n);
  for (std::size_t i = 0; i < n; ++i) sd[i] = signed_distance(poly[i], h) * keep;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const bool in_i = sd[i] >= -eps, in_j = sd[j] >= -eps;
    if (in_i) {
      out.push_back(poly[i]);
      if (std::abs(sd[i]) <= eps) cut_points.push_back(poly[i]);
    }
    if ((sd[i] > eps && sd[j] < -eps) || (sd[i] < -eps && sd[j] > eps)) {
      const double t = sd[i] / (sd[i] - sd[j]);
      const Vec3 x = poly[i] + (poly[j] - poly[i]) * t;
      out.push_back(x);
      cut_points.push_back(x);
    }
    (void)in_j;
  }
  return out;
}

double polygon_area3(const std::vector<Vec3>& v, const Vec3& n) {
  Vec3 s{};
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * dot(s, n);
}

std::vector<Vec3> order_on_plane(std::vector<Vec3> pts, const Vec3& outward, double eps) {
  // Deduplicate, then sort counter-clockwise around the centroid as seen
  // from the outward side.
  std::vector<Vec3> uniq;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : uniq)
      if (distance(p, q) <= 4 * eps) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(p);
  }
  if (uniq.size() < 3) return {};
  Vec3 c{};
  for (const auto& p : uniq) c += p;
  c *= 1.0 / static_cast<double>(uniq.size());
  Hyperplane<3> tmp(outward, dot(outward, c));
  const PlaneFrame<3> fr = PlaneFrame<3>::canonical(tmp);
  std::sort(uniq.begin(), uniq.end(), [&](const Vec3& a, const Vec3& b) {
    const Vec2 la = fr.to_local(a - c + fr.origin), lb = fr.to_local(b - c + fr.origin);
    return std::atan2(la[1], la[0]) < std::atan2(lb[1], lb[0]);
  });
  // The canonical frame (u, v, n) is right-handed, so this is CCW from outside.
  return uniq;
}

std::pair<Poly3, Poly3> split3(const Poly3& poly, const Hyperplane<3>& h, int carrier, double eps) {
  double lo = kInf, hi = -kInf;
  for (const auto& f : poly)
    for (const auto& v : f.verts) {
      const double d = signed_distance(v, h);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  if (hi <= eps) return {poly, {}};
  if (lo >= -eps) return {{}, poly};
  Poly3 neg, pos;
  std::vector<Vec3> cut;
  for (const auto& f : poly) {
    std::vector<Vec3> dummy;
    auto a = clip_polygon(f.verts, h, -1, eps, cut);
    auto b = clip_polygon(f.verts, h, +1, eps, dummy);
    if (a.size() >= 3 && polygon_area3(a, f.outward.normal) > eps * eps) neg.push_back({f.outward, f.carrier, a});
    if (b.size() >= 3 && polygon_area3(b, f.outward.normal) > eps * eps) pos.push_back({f.outward, f.carrier, b});
  }
  auto cap_neg = order_on_plane(cut, h.normal, eps);
  if (cap_neg.size() < 3 || polygon_area3(cap_neg, h.normal) <= eps * eps) {
    // Plane only grazes the polytope.
    return hi > -lo ? std::pair<Poly3, Poly3>{{}, poly} : std::pair<Poly3, Poly3>{poly, {}};
  }
  std::vector<Vec3> cap_pos(cap_neg.rbegin(), cap_neg.rend());
  neg.push_back({h, carrier, cap_neg});
  pos.push_back({h.flipped(), carrier, cap_pos});
  return {std::move(neg), std::move(pos)};
}

Poly3 box_polytope(const Box<3>& b) {
  Poly3 p;
  auto corner = [&](int i, int j, int k) { return Vec3{i ? b.hi[0] : b.lo[0], j ? b.hi[1] : b.lo[1], k ? b.hi[2] : b.lo[2]}; };
  for (int wall = 0; wall < 6; ++wall) {
    const Hyperplane<3> h = wall_plane(b, wall);
    const int axis = wall / 2, hi = wall % 2;
    std::vector<Vec3> v;
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c) {
        int idx[3];
        idx[axis] = hi;
        idx[(axis + 1) % 3] = a;
        idx[(axis + 2) % 3] = c ^ a;
        v.push_back(corner(idx[0], idx[1], idx[2]));
      }
    p.push_back({h, -1 - wall, order_on_plane(v, h.normal, 0.0)});
  }
  return p;
}

template <int D>
void fill_common(Cell<D>& cell, const std::vector<Hyperplane<D>>& planes) {
  Vec<D> c{};
  for (const auto& v : cell.vertices) c += v;
  c *= 1.0 / static_cast<double>(cell.vertices.size());
  cell.interior = c;
  cell.signs.resize(planes.size());
  for (std::size_t i = 0; i < planes.size(); ++i) cell.signs[i] = signed_distance(c, planes[i]) >= 0.0 ? 1 : -1;
  cell.bounded = true;
  for (auto& f : cell.faces) {
    if (f.plane_id >= 0) {
      f.side = cell.signs[static_cast<std::size_t>(f.plane_id)];
    } else {
      cell.bounded = false;
    }
  }
}

}  // namespace

template <int D>
double Cell<D>::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) d = std::max(d, distance(vertices[i], vertices[j]));
  return d;
}

template <int D>
Hyperplane<D> Arrangement<D>::carrier(int id) const {
  if (id >= 0) return planes_.at(static_cast<std::size_t>(id));
  return wall_plane(bbox_, -1 - id);
}

template <int D>
Arrangement<D>::Arrangement(std::vector<Hyperplane<D>> planes, const Box<D>& bbox, const Tolerance& tol)
    : planes_(std::move(planes)), bbox_(bbox), tol_(tol) {
  tol_.validate();
  for (int i = 0; i < D; ++i)
    if (!(bbox_.hi[i] > bbox_.lo[i])) throw GeometryError("empty bounding box");
  for (std::size_t i = 0; i < planes_.size(); ++i)
    for (std::size_t j = i + 1; j < planes_.size(); ++j) {
      const double c = dot(planes_[i].normal, planes_[j].normal);
      if (std::abs(c) >= 1.0 - tol_.eps_angle) {
        const double oj = c > 0 ? planes_[j].offset : -planes_[j].offset;
        if (std::abs(planes_[i].offset - oj) <= tol_.eps_geom)
          throw GeometryError("duplicate cutting planes " + std::to_string(i) + " and " + std::to_string(j));
      }
    }
  const double eps = tol_.eps_geom;

  if constexpr (D == 2) {
    Builder2 b(planes_, bbox_, eps);
    std::vector<Poly2> polys{b.box_polygon()};
    for (std::size_t k = 0; k < planes_.size(); ++k) {
      std::vector<Poly2> next;
      next.reserve(polys.size() * 2);
      for (const auto& p : polys) {
        auto [neg, pos] = b.split(p, static_cast<int>(k));
        if (!neg.verts.empty()) next.push_back(std::move(neg));
        if (!pos.verts.empty()) next.push_back(std::move(pos));
      }
      polys = std::move(next);
    }
    vertex_pool_ = b.pool();
    for (const auto& p : polys) {
      Cell<2> cell;
      cell.id = static_cast<int>(cells_.size());
      cell.loop_vertices = p.verts;
      const std::size_t n = p.verts.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertex_pool_[static_cast<std::size_t>(p.verts[i])];
        const Vec2 c = vertex_pool_[static_cast<std::size_t>(p.verts[(i + 1) % n])];
        cell.vertices.push_back(a);
        Face<2> f;
        Hyperplane<2> h = b.carrier(p.carriers[i]);
        const Vec2 out{c[1] - a[1], a[0] - c[0]};
        if (dot(out, h.normal) < 0.0) h = h.flipped();
        f.plane = h;
        f.plane_id = p.carriers[i] >= 0 ? p.carriers[i] : kBoundingBox;
        f.wall = p.carriers[i] >= 0 ? -1 : -1 - p.carriers[i];
        f.vertices = {a, c};
        cell.faces.push_back(std::move(f));
      }
      fill_common(cell, planes_);
      cells_.push_back(std::move(cell));
    }
  } else {
    std::vector<Poly3> polys{box_polytope(bbox_)};
    for (std::size_t k = 0; k < planes_.size(); ++k) {
      std::vector<Poly3> next;
      next.reserve(polys.size() * 2);
      for (const auto& p : polys) {
        auto [neg, pos] = split3(p, planes_[k], static_cast<int>(k), eps);
        if (!neg.empty()) next.push_back(std::move(neg));
        if (!pos.empty()) next.push_back(std::move(pos));
      }
      polys = std::move(next);
    }
    for (const auto& p : polys) {
      Cell<3> cell;
      cell.id = static_cast<int>(cells_.size());
      for (const auto& fp : p) {
        Face<3> f;
        f.plane = fp.outward;
        f.plane_id = fp.carrier >= 0 ? fp.carrier : kBoundingBox;
        f.wall = fp.carrier >= 0 ? -1 : -1 - fp.carrier;
        f.vertices = fp.verts;
        for (const auto& v : fp.verts) {
          bool dup = false;
          for (const auto& q : cell.vertices)
            if (distance(v, q) <= 4 * eps) {
              dup = true;
              break;
            }
          if (!dup) cell.vertices.push_back(v);
        }
        cell.faces.push_back(std::move(f));
      }
      fill_common(cell, planes_);
      cells_.push_back(std::move(cell));
    }
  }
  for (const auto& c : cells_) by_signs_.emplace(sign_key(c.signs), c.id);
}

template <int D>
int Arrangement<D>::lookup(const std::vector<std::int8_t>& signs) const {
  auto it = by_signs_.find(sign_key(signs));
  return it == by_signs_.end() ? -1 : it->second;
}

template <int D>
int Arrangement<D>::locate(const Vec<D>& x) const {
  if (!bbox_.contains(x, tol_.eps_geom)) throw GeometryError("point outside the bounding box");
  std::vector<std::int8_t> s(planes_.size());
  std::vector<std::int8_t> strict(planes_.size());
  for (std::size_t i = 0; i < planes_.size(); ++i) {
    const double d = signed_distance(x, planes_[i]);
    s[i] = d >= -tol_.eps_geom ? 1 : -1;
    strict[i] = d >= 0.0 ? 1 : -1;
  }
  int id = lookup(s);
  if (id < 0) id = lookup(strict);
  if (id >= 0) return id;
  // Sign vector without a cell inside the box (possible only within eps of
  // several planes); fall back to a containment scan.
  int best = -1;
  double best_viol = kInf;
  for (const auto& c : cells_) {
    double viol = 0.0;
    for (const auto& f : c.faces) viol = std::max(viol, -f.interior_distance(x));
    if (viol < best_viol) {
      best_viol = viol;
      best = c.id;
    }
  }
  return best;
}

template <int D>
std::vector<int> Arrangement<D>::cells_containing(const Vec<D>& x) const {
  std::vector<std::int8_t> s(planes_.size());
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < planes_.size(); ++i) {
    const double d = signed_distance(x, planes_[i]);
    s[i] = d >= 0.0 ? 1 : -1;
    if (std::abs(d) <= tol_.eps_geom) ties.push_back(i);
  }
  if (ties.size() > 12) ties.resize(12);
  std::vector<int> out;
  const std::size_t combos = std::size_t{1} << ties.size();
  for (std::size_t m = 0; m < combos; ++m) {
    for (std::size_t t = 0; t < ties.size(); ++t) s[ties[t]] = (m >> t) & 1 ? 1 : -1;
    const int id = lookup(s);
    if (id >= 0 && cells_[static_cast<std::size_t>(id)].contains(x, tol_.eps_geom)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <int D>
NearestFaceResult<D> nearest_face(const Vec<D>& x, const Cell<D>& cell, const Tolerance& tol) {
  NearestFaceResult<D> r;
  double best = kInf;
  std::vector<double> d(cell.faces.size());
  for (std::size_t i = 0; i < cell.faces.size(); ++i) {
    d[i] = cell.faces[i].interior_distance(x);
    if (d[i] < -tol.eps_geom) throw GeometryError("point outside the cell");
    best = std::min(best, d[i]);
  }
  r.distance = std::max(best, 0.0);
  for (std::size_t i = 0; i < cell.faces.size(); ++i)
    if (d[i] <= best + tol.eps_geom) {
      r.faces.push_back(static_cast<int>(i));
      r.points.push_back(x + cell.faces[i].plane.normal * d[i]);
    }
  return r;
}

template <int D>
std::pair<double, Vec<D>> cell_height_with_center(const Cell<D>& cell, const Arrangement<D>& arr) {
  const auto& planes = arr.planes();
  if (planes.empty()) return {kInf, cell.interior};
  // Shift to the interior point so the origin is feasible; split free
  // coordinates into positive and negative parts.
  const int nv = 2 * D + 1;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const double s = cell.signs[i];
    const double di = s * signed_distance(cell.interior, planes[i]);
    std::vector<double> row(static_cast<std::size_t>(nv), 0.0);
    for (int k = 0; k < D; ++k) {
      row[static_cast<std::size_t>(k)] = -s * planes[i].normal[k];
      row[static_cast<std::size_t>(D + k)] = s * planes[i].normal[k];
    }
    row[static_cast<std::size_t>(2 * D)] = 1.0;
    A.push_back(std::move(row));
    b.push_back(std::max(di, 0.0));
  }
  std::vector<double> c(static_cast<std::size_t>(nv), 0.0);
  c[static_cast<std::size_t>(2 * D)] = 1.0;
  const lp::Result res = lp::maximize(A, b, c);
  if (res.status == lp::Status::Unbounded) return {kInf, cell.interior};
  if (res.status != lp::Status::Optimal)
    throw LpError("cell height LP did not converge for cell " + std::to_string(cell.id) + " after " +
                  std::to_string(res.iterations) + " iterations");
  Vec<D> center = cell.interior;
  for (int k = 0; k < D; ++k)
    center[k] += res.x[static_cast<std::size_t>(k)] - res.x[static_cast<std::size_t>(D + k)];
  return {res.value, center};
}

template <int D>
double cell_height(const Cell<D>& cell, const Arrangement<D>& arr) {
  return cell_height_with_center(cell, arr).first;
}

template <int D>
double distance_to_cutting_planes(const Vec<D>& x, const Cell<D>& cell, const Arrangement<D>& arr) {
  double best = kInf;
  for (std::size_t i = 0; i < arr.planes().size(); ++i)
    best = std::min(best, cell.signs[i] * signed_distance(x, arr.planes()[i]));
  return best;
}

#define XSECT_INSTANTIATE(D)                                                                             \
  template struct Cell<D>;                                                                               \
  template class Arrangement<D>;                                                                         \
  template NearestFaceResult<D> nearest_face(const Vec<D>&, const Cell<D>&, const Tolerance&);           \
  template double cell_height(const Cell<D>&, const Arrangement<D>&);                                    \
  template std::pair<double, Vec<D>> cell_height_with_center(const Cell<D>&, const Arrangement<D>&);     \
  template double distance_to_cutting_planes(const Vec<D>&, const Cell<D>&, const Arrangement<D>&);
XSECT_INSTANTIATE(2)
XSECT_INSTANTIATE(3)
#undef XSECT_INSTANTIATE

}  // namespace xsect
