#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Min distance to every cutting plane, or -inf when x is not on the cell's
// side of some plane (the sign vector decides, not the face list).
template <int D>
double cut_distance(const Vec<D>& x, const Cell<D>& cell, const Arrangement<D>& arr) {
  double best = kInf;
  const auto& planes = arr.planes();
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const double s = xsect::dot(planes[i].normal, x) - planes[i].offset;
    if (s * cell.signs[i] < 0) return -kInf;
    best = std::min(best, std::abs(s));
  }
  return best;
}

template <int D>
void visit_lattice(const Vec<D>& lo, const Vec<D>& step, int per_axis, auto&& fn) {
  std::array<int, D> i{};
  while (true) {
    Vec<D> x;
    for (int k = 0; k < D; ++k) x[k] = lo[k] + i[k] * step[k];
    fn(x);
    int k = 0;
    while (k < D && ++i[k] == per_axis) i[k++] = 0;
    if (k == D) return;
  }
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = xsect::dot(d, d);
  double t = len2 > 0 ? xsect::dot(p - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return xsect::distance(p, a + d * t);
}

double contour_distance(const Vec2& p, const PolygonWithHoles& poly) {
  double best = kInf;
  auto scan = [&](const Loop& l) {
    for (std::size_t i = 0; i < l.size(); ++i) best = std::min(best, segment_distance(p, l[i], l[(i + 1) % l.size()]));
  };
  scan(poly.outer);
  for (const auto& h : poly.holes) scan(h);
  return best;
}

// Signed margin of the in-section test: positive inside some region.
double section_margin(const xsect::PlaneSections<2>& ps, const Vec2& a) {
  const double s = ps.frame.to_local(a);
  double best = -kInf;
  for (const auto& iv : ps.regions) best = std::max(best, std::min(s - iv.lo, iv.hi - s));
  return best;
}

double section_margin(const xsect::PlaneSections<3>& ps, const Vec3& a) {
  const Vec2 p = ps.frame.to_local(a);
  double best = -kInf;
  for (const auto& r : ps.regions) {
    const double d = contour_distance(p, r);
    best = std::max(best, inside_polygon(p, r) ? d : -d);
  }
  return best;
}

template <int D>
double other_faces_distance(const Vec<D>& x, int face, const Cell<D>& cell) {
  double best = kInf;
  for (std::size_t g = 0; g < cell.faces.size(); ++g)
    if (static_cast<int>(g) != face) best = std::min(best, cell.faces[g].interior_distance(x));
  return best;
}

}  // namespace

template <int D>
double cell_height_grid(const Cell<D>& cell, const Arrangement<D>& arr) {
  Vec<D> lo = cell.vertices.front(), hi = lo;
  for (const auto& v : cell.vertices)
    for (int k = 0; k < D; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
  const double diam = xsect::distance(lo, hi);

  constexpr int coarse = D == 2 ? 201 : 41;
  Vec<D> step;
  for (int k = 0; k < D; ++k) step[k] = (hi[k] - lo[k]) / (coarse - 1);
  double best = -kInf;
  Vec<D> arg = cell.interior;
  auto probe = [&](const Vec<D>& x) {
    const double v = cut_distance(x, cell, arr);
    if (v > best) {
      best = v;
      arg = x;
    }
  };
  probe(cell.interior);
  visit_lattice<D>(lo, step, coarse, probe);

  // Zoom: a 9-point-per-axis lattice spanning two old spacings either side.
  // When the best sample lands on the window border the maximum may lie
  // further out, so the window moves without shrinking.
  constexpr int fine = 9;
  Vec<D> spacing = step;
  for (int iter = 0; iter < 5000; ++iter) {
    double smax = 0.0;
    for (int k = 0; k < D; ++k) smax = std::max(smax, spacing[k]);
    if (smax < 1e-12 * diam) break;
    const Vec<D> centre = arg;
    Vec<D> start, sub;
    for (int k = 0; k < D; ++k) {
      start[k] = centre[k] - 2 * spacing[k];
      sub[k] = 4 * spacing[k] / (fine - 1);
    }
    visit_lattice<D>(start, sub, fine, probe);
    bool on_border = false;
    for (int k = 0; k < D; ++k)
      if (std::abs(std::abs(arg[k] - centre[k]) - 2 * spacing[k]) < 1e-3 * spacing[k]) on_border = true;
    if (!on_border) spacing = sub;
  }
  return best;
}

template <int D>
double lift_parameter_bisection(const Vec<D>& a, int face, const Cell<D>& cell, double box_diameter) {
  const Vec<D> n = -cell.faces[static_cast<std::size_t>(face)].plane.normal;
  // g(t) = t - (distance to the nearest other face) is convex with g(0) <= 0.
  auto g = [&](double t) { return t - other_faces_distance<D>(a + n * t, face, cell); };
  double hi = box_diameter * 1e-3;
  while (g(hi) <= 0) {
    hi *= 2;
    if (hi > 16 * box_diameter) return kInf;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * box_diameter; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) <= 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

int winding_number(const Vec2& p, const Loop& loop) {
  int w = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % loop.size()];
    const double side = (b[0] - a[0]) * (p[1] - a[1]) - (p[0] - a[0]) * (b[1] - a[1]);
    if (a[1] <= p[1]) {
      if (b[1] > p[1] && side > 0) ++w;
    } else if (b[1] <= p[1] && side < 0) {
      --w;
    }
  }
  return w;
}

bool inside_polygon(const Vec2& p, const PolygonWithHoles& poly) {
  if (winding_number(p, poly.outer) == 0) return false;
  for (const auto& h : poly.holes)
    if (winding_number(p, h) != 0) return false;
  return true;
}

template <int D>
SegmentUnionAnswer<D> in_reconstruction_segments(const Vec<D>& x, int cell_id, const Arrangement<D>& arr,
                                                 const SectionSet<D>& sections) {
  const Cell<D>& cell = arr.cell(cell_id);
  const double diam = arr.bbox().diameter();
  SegmentUnionAnswer<D> ans;
  double hit_margin = -kInf, miss_margin = kInf;
  for (std::size_t f = 0; f < cell.faces.size(); ++f) {
    const auto& face = cell.faces[f];
    if (face.is_bbox()) continue;
    const double d = face.interior_distance(x);
    const Vec<D> a = x + face.plane.normal * d;  // foot on the face's plane
    const double m_face = other_faces_distance<D>(a, static_cast<int>(f), cell);
    const double m_sec = section_margin(sections.on_plane(face.plane_id), a);
    const double m_lift = lift_parameter_bisection<D>(a, static_cast<int>(f), cell, diam) - d;
    const double worst = std::min({m_face, m_sec, m_lift});
    if (worst >= 0) {
      hit_margin = std::max(hit_margin, worst);
    } else {
      double needed = 0.0;
      for (double m : {m_face, m_sec, m_lift})
        if (m < 0) needed = std::max(needed, -m);
      miss_margin = std::min(miss_margin, needed);
    }
  }
  ans.inside = hit_margin >= 0;
  ans.margin = ans.inside ? hit_margin : miss_margin;
  return ans;
}

double torus_sdf(const Vec3& x, const Vec3& c, const Vec3& axis, double R, double r) {
  const Vec3 n = xsect::normalized(axis);
  const Vec3 d = x - c;
  const double h = xsect::dot(d, n);
  const double rho = xsect::norm(d - n * h);
  return std::hypot(rho - R, h) - r;
}

template double cell_height_grid<2>(const Cell<2>&, const Arrangement<2>&);
template double cell_height_grid<3>(const Cell<3>&, const Arrangement<3>&);
template double lift_parameter_bisection<2>(const Vec2&, int, const Cell<2>&, double);
template double lift_parameter_bisection<3>(const Vec3&, int, const Cell<3>&, double);
template SegmentUnionAnswer<2> in_reconstruction_segments<2>(const Vec2&, int, const Arrangement<2>&,
                                                              const SectionSet<2>&);
template SegmentUnionAnswer<3> in_reconstruction_segments<3>(const Vec3&, int, const Arrangement<3>&,
                                                              const SectionSet<3>&);

}  // namespace oracle
