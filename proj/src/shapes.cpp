#include "xsect/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace xsect {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Angles of an arc's parameter at which the core is parallel to h.
template <int D>
std::vector<double> arc_critical_angles(const CorePiece<D>& p, const Hyperplane<D>& h) {
  const double al = dot(h.normal, p.e1), be = dot(h.normal, p.e2);
  std::vector<double> out;
  if (std::hypot(al, be) < 1e-14) return out;
  const double base = std::atan2(be, al);
  for (double t : {base, base + kPi, base - kPi, base + 2 * kPi, base - 2 * kPi, base + 3 * kPi})
    if (t > p.t0 && t < p.t1) out.push_back(t);
  return out;
}

template <int D>
Vec<D> any_perpendicular(const Vec<D>& t) {
  if constexpr (D == 2) {
    return norm(t) > 0 ? normalized(perp(t)) : Vec2{1.0, 0.0};
  } else {
    if (norm(t) == 0.0) return Vec3{1.0, 0.0, 0.0};
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(t[i]) < std::abs(t[k])) k = i;
    Vec3 s{};
    s[k] = 1.0;
    return normalized(cross(t, s));
  }
}

template <int D>
Vec<D> piece_tangent(const CorePiece<D>& p, double u) {
  if (!p.is_arc) return p.b - p.a;
  const double t = p.t0 + (p.t1 - p.t0) * u;
  return (p.e1 * -std::sin(t) + p.e2 * std::cos(t)) * p.rho;
}

std::vector<Vec3> fibonacci_sphere(int n) {
  std::vector<Vec3> out;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.push_back({rr * std::cos(golden * i), rr * std::sin(golden * i), z});
  }
  return out;
}

}  // namespace

std::string to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::Ball: return "ball";
    case PrimitiveKind::SolidTorus: return "torus";
    case PrimitiveKind::Capsule: return "capsule";
    case PrimitiveKind::Tube: return "tube";
    case PrimitiveKind::Disk2D: return "disk";
    case PrimitiveKind::Annulus2D: return "annulus";
  }
  return "unknown";
}

// ------------------------------------------------------------- CorePiece

template <int D>
Vec<D> CorePiece<D>::point(double u) const {
  if (!is_arc) return a + (b - a) * u;
  const double t = t0 + (t1 - t0) * u;
  return center + (e1 * std::cos(t) + e2 * std::sin(t)) * rho;
}

template <int D>
double CorePiece<D>::length() const {
  return is_arc ? rho * (t1 - t0) : distance(a, b);
}

template <int D>
Vec<D> CorePiece<D>::closest(const Vec<D>& x) const {
  if (!is_arc) {
    const Vec<D> ab = b - a;
    const double l2 = dot(ab, ab);
    if (l2 == 0.0) return a;
    return a + ab * std::clamp(dot(x - a, ab) / l2, 0.0, 1.0);
  }
  const Vec<D> r = x - center;
  const double p1 = dot(r, e1), p2 = dot(r, e2);
  if (std::hypot(p1, p2) < 1e-300) return point(0.0);
  double t = std::atan2(p2, p1);
  while (t < t0) t += 2 * kPi;
  while (t >= t0 + 2 * kPi) t -= 2 * kPi;
  if (t <= t1) return center + (e1 * std::cos(t) + e2 * std::sin(t)) * rho;
  const Vec<D> s = point(0.0), e = point(1.0);
  return distance(x, s) <= distance(x, e) ? s : e;
}

template <int D>
std::pair<double, double> CorePiece<D>::signed_range(const Hyperplane<D>& h) const {
  double lo = std::min(xsect::signed_distance(point(0.0), h), xsect::signed_distance(point(1.0), h));
  double hi = std::max(xsect::signed_distance(point(0.0), h), xsect::signed_distance(point(1.0), h));
  if (is_arc)
    for (double t : arc_critical_angles(*this, h)) {
      const double s = signed_distance(center + (e1 * std::cos(t) + e2 * std::sin(t)) * rho, h);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  return {lo, hi};
}

template <int D>
std::vector<double> CorePiece<D>::critical_values(const Hyperplane<D>& h) const {
  std::vector<double> out;
  if (!is_arc) {
    const double len = distance(a, b);
    if (std::abs(dot(h.normal, b - a)) <= 1e-12 * std::max(len, 1e-300) || len == 0.0)
      out.push_back(xsect::signed_distance(a, h));
    return out;
  }
  const double al = dot(h.normal, e1), be = dot(h.normal, e2);
  if (std::hypot(al, be) < 1e-14) {
    out.push_back(xsect::signed_distance(center, h));
    return out;
  }
  for (double t : arc_critical_angles(*this, h))
    out.push_back(signed_distance(center + (e1 * std::cos(t) + e2 * std::sin(t)) * rho, h));
  return out;
}

// ------------------------------------------------------------- Primitive

template <int D>
Vec<D> Primitive<D>::closest_core_point(const Vec<D>& x) const {
  Vec<D> best = core.front().closest(x);
  double bd = distance(x, best);
  for (std::size_t i = 1; i < core.size(); ++i) {
    const Vec<D> c = core[i].closest(x);
    const double d = distance(x, c);
    if (d < bd) {
      bd = d;
      best = c;
    }
  }
  return best;
}

template <int D>
double Primitive<D>::signed_distance(const Vec<D>& x) const {
  return distance(x, closest_core_point(x)) - radius;
}

template <int D>
Box<D> Primitive<D>::bounds() const {
  Box<D> b;
  for (int k = 0; k < D; ++k) {
    b.lo[k] = kInf;
    b.hi[k] = -kInf;
  }
  for (const auto& p : core) {
    std::vector<Vec<D>> pts;
    if (p.is_arc) {
      for (int k = 0; k < D; ++k) {
        Vec<D> e{};
        e[k] = p.rho;
        pts.push_back(p.center + e);
        pts.push_back(p.center - e);
      }
    } else {
      pts = {p.a, p.b};
    }
    for (const auto& q : pts)
      for (int k = 0; k < D; ++k) {
        b.lo[k] = std::min(b.lo[k], q[k] - radius);
        b.hi[k] = std::max(b.hi[k], q[k] + radius);
      }
  }
  return b;
}

Primitive<3> make_ball(const Vec3& c, double r) {
  if (!(r > 0.0)) throw ValidationError("ball", "radius must be positive");
  Primitive<3> p;
  p.kind = PrimitiveKind::Ball;
  p.radius = r;
  p.center = c;
  CorePiece<3> piece;
  piece.a = piece.b = c;
  p.core = {piece};
  return p;
}

Primitive<3> make_torus(const Vec3& c, const Vec3& axis, double R, double r) {
  if (!(r > 0.0) || !(R > r)) throw ValidationError("torus", "need 0 < r_minor < R_major");
  Primitive<3> p;
  p.kind = PrimitiveKind::SolidTorus;
  p.radius = r;
  p.center = c;
  p.axis = normalized(axis);
  p.major = R;
  p.closed_core = true;
  CorePiece<3> piece;
  piece.is_arc = true;
  piece.center = c;
  piece.e1 = any_perpendicular(p.axis);
  piece.e2 = cross(p.axis, piece.e1);
  piece.rho = R;
  piece.t0 = 0.0;
  piece.t1 = 2 * kPi;
  p.core = {piece};
  return p;
}

Primitive<3> make_capsule(const Vec3& a, const Vec3& b, double r) {
  if (!(r > 0.0)) throw ValidationError("capsule", "radius must be positive");
  Primitive<3> p;
  p.kind = PrimitiveKind::Capsule;
  p.radius = r;
  p.polyline = {a, b};
  CorePiece<3> piece;
  piece.a = a;
  piece.b = b;
  p.core = {piece};
  return p;
}

Primitive<3> make_tube(const std::vector<Vec3>& pts, double r, double fillet) {
  if (pts.size() < 2) throw ValidationError("tube", "core needs at least two points");
  if (!(r > 0.0) || !(fillet > r)) throw ValidationError("tube", "need 0 < r < fillet radius");
  Primitive<3> p;
  p.kind = PrimitiveKind::Tube;
  p.radius = r;
  p.fillet = fillet;
  p.polyline = pts;
  // Trim each corner by its tangent length and insert an arc.
  std::vector<double> trim_in(pts.size(), 0.0), trim_out(pts.size(), 0.0);
  std::vector<CorePiece<3>> arcs(pts.size());
  std::vector<bool> has_arc(pts.size(), false);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const Vec3 d0 = normalized(pts[i] - pts[i - 1]), d1 = normalized(pts[i + 1] - pts[i]);
    const double phi = std::acos(std::clamp(dot(d0, d1), -1.0, 1.0));
    if (phi < 1e-12) continue;
    if (phi > kPi - 1e-9) throw ValidationError("tube", "core reverses direction");
    const double L = fillet * std::tan(phi / 2);
    trim_in[i] = trim_out[i] = L;
    const Vec3 S = pts[i] - d0 * L;
    const Vec3 m = normalized(d1 - d0 * dot(d1, d0));
    CorePiece<3> arc;
    arc.is_arc = true;
    arc.center = S + m * fillet;
    arc.e1 = -m;
    arc.e2 = d0;
    arc.rho = fillet;
    arc.t0 = 0.0;
    arc.t1 = phi;
    arcs[i] = arc;
    has_arc[i] = true;
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double len = distance(pts[i], pts[i + 1]);
    if (trim_out[i] + trim_in[i + 1] > len + 1e-12)
      throw ValidationError("tube", "segment " + std::to_string(i) + " too short for the fillet radius");
    const Vec3 d = normalized(pts[i + 1] - pts[i]);
    CorePiece<3> seg;
    seg.a = pts[i] + d * trim_out[i];
    seg.b = pts[i + 1] - d * trim_in[i + 1];
    if (distance(seg.a, seg.b) > 1e-12) p.core.push_back(seg);
    if (has_arc[i + 1]) p.core.push_back(arcs[i + 1]);
  }
  return p;
}

Primitive<2> make_disk(const Vec2& c, double r) {
  if (!(r > 0.0)) throw ValidationError("disk", "radius must be positive");
  Primitive<2> p;
  p.kind = PrimitiveKind::Disk2D;
  p.radius = r;
  p.center = c;
  CorePiece<2> piece;
  piece.a = piece.b = c;
  p.core = {piece};
  return p;
}

Primitive<2> make_annulus(const Vec2& c, double r_in, double r_out) {
  if (!(r_in > 0.0) || !(r_out > r_in)) throw ValidationError("annulus", "need 0 < r_in < r_out");
  Primitive<2> p;
  p.kind = PrimitiveKind::Annulus2D;
  p.radius = 0.5 * (r_out - r_in);
  p.center = c;
  p.major = 0.5 * (r_out + r_in);
  p.closed_core = true;
  CorePiece<2> piece;
  piece.is_arc = true;
  piece.center = c;
  piece.e1 = {1.0, 0.0};
  piece.e2 = {0.0, 1.0};
  piece.rho = p.major;
  piece.t0 = 0.0;
  piece.t1 = 2 * kPi;
  p.core = {piece};
  return p;
}

// ------------------------------------------------------------- Shape

template <int D>
Shape<D>::Shape(std::vector<Primitive<D>> comps) : comps_(std::move(comps)) {
  for (std::size_t i = 0; i < comps_.size(); ++i)
    for (std::size_t j = i + 1; j < comps_.size(); ++j) {
      Shape<D> pair;
      pair.comps_ = {comps_[i], comps_[j]};
      if (!(pair.min_clearance() > 0.0))
        throw ValidationError("shape.components", "components " + std::to_string(i) + " and " + std::to_string(j) +
                                                      " are not disjoint");
    }
  reach_ = compute_reach();
}

template <int D>
double Shape<D>::signed_distance(const Vec<D>& x) const {
  double d = kInf;
  for (const auto& c : comps_) d = std::min(d, c.signed_distance(x));
  return d;
}

template <int D>
bool Shape<D>::contains(const Vec<D>& x) const {
  for (const auto& c : comps_)
    for (const auto& piece : c.core) {
      // |dist(x, center) - rho| bounds the distance to any arc of that circle from below.
      if (piece.is_arc && std::abs(distance(x, piece.center) - piece.rho) > c.radius) continue;
      if (distance(x, piece.closest(x)) <= c.radius) return true;
    }
  return false;
}

template <int D>
Vec<D> Shape<D>::project_to_boundary(const Vec<D>& x) const {
  const Primitive<D>* best = nullptr;
  double bd = kInf;
  for (const auto& c : comps_) {
    const double d = std::abs(c.signed_distance(x));
    if (d < bd) {
      bd = d;
      best = &c;
    }
  }
  if (!best) throw GeometryError("empty shape has no boundary");
  const Vec<D> c = best->closest_core_point(x);
  const Vec<D> dir = x - c;
  const double len = norm(dir);
  return c + (len > 0 ? dir * (1.0 / len) : any_perpendicular(Vec<D>{})) * best->radius;
}

template <int D>
Vec<D> Shape<D>::boundary_normal(const Vec<D>& a, const Tolerance& tol) const {
  const Primitive<D>* best = nullptr;
  double bd = kInf;
  for (const auto& c : comps_) {
    const double d = std::abs(c.signed_distance(a));
    if (d < bd) {
      bd = d;
      best = &c;
    }
  }
  if (!best || bd > std::max(tol.eps_geom, 1e-12 * (1.0 + norm(a))))
    throw GeometryError("boundary_normal: point is not on the boundary");
  const Vec<D> dir = a - best->closest_core_point(a);
  return normalized(dir);
}

template <int D>
Box<D> Shape<D>::bounds() const {
  Box<D> b;
  for (int k = 0; k < D; ++k) {
    b.lo[k] = kInf;
    b.hi[k] = -kInf;
  }
  for (const auto& c : comps_) {
    const Box<D> cb = c.bounds();
    for (int k = 0; k < D; ++k) {
      b.lo[k] = std::min(b.lo[k], cb.lo[k]);
      b.hi[k] = std::max(b.hi[k], cb.hi[k]);
    }
  }
  return b;
}

template <int D>
double Shape<D>::min_clearance() const {
  double best = kInf;
  for (std::size_t i = 0; i < comps_.size(); ++i)
    for (std::size_t j = i + 1; j < comps_.size(); ++j) {
      const auto& A = comps_[i];
      const auto& B = comps_[j];
      for (const auto& pa : A.core) {
        // Dense sampling along pa, then golden-section refinement around the best sample.
        const int n = 256;
        auto f = [&](double u) { return distance(pa.point(u), B.closest_core_point(pa.point(u))); };
        int arg = 0;
        double fv = kInf;
        for (int k = 0; k <= n; ++k) {
          const double v = f(static_cast<double>(k) / n);
          if (v < fv) {
            fv = v;
            arg = k;
          }
        }
        double lo = std::max(0.0, (arg - 1.0) / n), hi = std::min(1.0, (arg + 1.0) / n);
        const double g = (std::sqrt(5.0) - 1) / 2;
        for (int it = 0; it < 80; ++it) {
          const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
          if (f(m1) < f(m2)) hi = m2;
          else lo = m1;
        }
        fv = std::min(fv, f(0.5 * (lo + hi)));
        best = std::min(best, fv - A.radius - B.radius);
      }
    }
  return best;
}

template <int D>
double Shape<D>::external_radius(const Vec<D>& a, const Vec<D>& n, const Box<D>& clip) const {
  // Distance along n to leave the clip box.
  double T = kInf;
  for (int k = 0; k < D; ++k) {
    if (n[k] > 1e-15) T = std::min(T, (clip.hi[k] - a[k]) / n[k]);
    if (n[k] < -1e-15) T = std::min(T, (clip.lo[k] - a[k]) / n[k]);
  }
  if (!(T > 0.0) || !std::isfinite(T)) return kInf;
  const double scale = 1.0 + norm(a) + T;
  auto ok = [&](double t) { return signed_distance(a + n * t) >= t - 1e-12 * scale; };
  if (ok(T)) return kInf;
  double lo = 0.0, hi = T;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

template <int D>
double Shape<D>::compute_reach() const {
  if (comps_.empty()) return kInf;
  double r = kInf;
  for (const auto& c : comps_) {
    switch (c.kind) {
      case PrimitiveKind::Ball:
      case PrimitiveKind::Capsule:
      case PrimitiveKind::Disk2D: r = std::min(r, c.radius); break;
      case PrimitiveKind::SolidTorus: r = std::min({r, c.radius, c.major - c.radius}); break;
      case PrimitiveKind::Annulus2D: r = std::min({r, c.radius, c.major - c.radius}); break;
      case PrimitiveKind::Tube: {
        // Inner side of the fillets plus any self-approach of the tube,
        // measured through external medial radii of dense boundary samples.
        double t = std::min(c.radius, c.fillet - c.radius);
        Shape<D> alone;
        alone.comps_ = {c};
        Box<D> clip = c.bounds();
        for (const auto& s : alone.boundary_samples(8000, clip))
          if (s.has_ext) t = std::min(t, s.r_ext);
        r = std::min(r, t);
        break;
      }
    }
  }
  return std::min(r, 0.5 * min_clearance());
}

template <int D>
std::vector<BoundarySample<D>> Shape<D>::boundary_samples(int n, const Box<D>& clip) const {
  std::vector<BoundarySample<D>> out;
  if (comps_.empty() || n <= 0) return out;
  // Split the budget by approximate boundary measure.
  std::vector<double> measure;
  for (const auto& c : comps_) {
    double L = 0.0;
    for (const auto& p : c.core) L += p.length();
    if constexpr (D == 3) measure.push_back(2 * kPi * c.radius * L + 4 * kPi * c.radius * c.radius);
    else measure.push_back(2 * L + (c.closed_core ? 0.0 : 2 * kPi * c.radius));
  }
  double total = 0.0;
  for (double m : measure) total += m;

  auto emit = [&](const Primitive<D>& c, const Vec<D>& core_pt, const Vec<D>& dir) {
    BoundarySample<D> s;
    s.normal = dir;
    s.a = core_pt + dir * c.radius;
    s.m_int = core_pt;
    s.r_int = c.radius;
    const double re = external_radius(s.a, s.normal, clip);
    if (std::isfinite(re)) {
      s.has_ext = true;
      s.r_ext = re;
      s.m_ext = s.a + s.normal * re;
    }
    out.push_back(s);
  };

  for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
    const auto& c = comps_[ci];
    const int budget = std::max(8, static_cast<int>(std::ceil(n * measure[ci] / total)));
    const double delta = (D == 3) ? std::sqrt(measure[ci] / budget) : measure[ci] / budget;
    const int around = (D == 3) ? std::max(8, static_cast<int>(std::ceil(2 * kPi * c.radius / delta))) : 2;
    for (const auto& piece : c.core) {
      const double L = piece.length();
      if (L == 0.0) continue;
      const int steps = std::max(1, static_cast<int>(std::ceil(L / delta)));
      for (int k = 0; k <= steps; ++k) {
        if (c.closed_core && k == steps) break;
        const double u = static_cast<double>(k) / steps;
        const Vec<D> cp = piece.point(u);
        const Vec<D> tng = normalized(piece_tangent(piece, u));
        const Vec<D> p1 = any_perpendicular(tng);
        if constexpr (D == 3) {
          const Vec3 p2 = cross(tng, p1);
          for (int j = 0; j < around; ++j) {
            const double th = 2 * kPi * j / around;
            emit(c, cp, p1 * std::cos(th) + p2 * std::sin(th));
          }
        } else {
          emit(c, cp, p1);
          emit(c, cp, -p1);
        }
      }
    }
    if (!c.closed_core) {
      // Caps at the core ends (the whole sphere or circle for point cores).
      const CorePiece<D>& first = c.core.front();
      const CorePiece<D>& last = c.core.back();
      const bool point_core = c.core.size() == 1 && first.length() == 0.0;
      const Vec<D> ends[2] = {first.point(0.0), last.point(1.0)};
      const Vec<D> outward[2] = {point_core ? Vec<D>{} : normalized(piece_tangent(first, 0.0)) * -1.0,
                                 point_core ? Vec<D>{} : normalized(piece_tangent(last, 1.0))};
      for (int e = 0; e < (point_core ? 1 : 2); ++e) {
        if constexpr (D == 3) {
          const int m = std::max(16, static_cast<int>(std::ceil(4 * kPi * c.radius * c.radius / (delta * delta))));
          for (const auto& u : fibonacci_sphere(m))
            if (point_core || dot(u, outward[e]) > 0.0) emit(c, ends[e], u);
        } else {
          const int m = std::max(16, static_cast<int>(std::ceil(2 * kPi * c.radius / delta)));
          for (int j = 0; j < m; ++j) {
            const Vec2 u{std::cos(2 * kPi * j / m), std::sin(2 * kPi * j / m)};
            if (point_core || dot(u, outward[e]) > 0.0) emit(c, ends[e], u);
          }
        }
      }
    }
  }
  return out;
}

template <int D>
std::vector<MedialSample<D>> Shape<D>::medial_samples(MedialSide side, int n, const Box<D>& clip) const {
  if (n < 1) throw ValidationError("medial_samples", "n must be at least 1");
  std::vector<MedialSample<D>> out;
  if (side == MedialSide::Internal) {
    for (const auto& c : comps_) {
      double L = 0.0;
      for (const auto& p : c.core) L += p.length();
      auto witness_at = [&](const CorePiece<D>& p, double u) {
        return p.point(u) + any_perpendicular(normalized(piece_tangent(p, u) + Vec<D>{})) * c.radius;
      };
      if (L == 0.0) {
        const Vec<D> m = c.core.front().a;
        Vec<D> e{};
        e[0] = c.radius;
        out.push_back({m, MedialSide::Internal, c.radius, m + e});
        continue;
      }
      const int count = c.closed_core ? n : std::max(n, 2);
      for (int k = 0; k < count; ++k) {
        double s = c.closed_core ? L * k / count : L * k / (count - 1);
        for (const auto& p : c.core) {
          const double pl = p.length();
          if (s <= pl + 1e-12 || &p == &c.core.back()) {
            const double u = pl > 0 ? std::clamp(s / pl, 0.0, 1.0) : 0.0;
            out.push_back({p.point(u), MedialSide::Internal, c.radius, witness_at(p, u)});
            break;
          }
          s -= pl;
        }
      }
    }
    return out;
  }
  const auto samples = boundary_samples(std::max(n * 8, 512), clip);
  std::vector<const BoundarySample<D>*> ext;
  for (const auto& s : samples)
    if (s.has_ext && clip.contains(s.m_ext)) ext.push_back(&s);
  if (ext.empty()) return out;
  const std::size_t stride = std::max<std::size_t>(1, ext.size() / static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < ext.size() && out.size() < static_cast<std::size_t>(n); i += stride)
    out.push_back({ext[i]->m_ext, MedialSide::External, ext[i]->r_ext, ext[i]->a});
  return out;
}

template <int D>
void Shape<D>::check_general_position(const Hyperplane<D>& h, const Tolerance& tol) const {
  for (std::size_t ci = 0; ci < comps_.size(); ++ci) {
    const auto& c = comps_[ci];
    std::vector<double> vals;
    for (const auto& p : c.core) {
      const auto cv = p.critical_values(h);
      vals.insert(vals.end(), cv.begin(), cv.end());
    }
    if (!c.closed_core) {
      vals.push_back(xsect::signed_distance(c.core.front().point(0.0), h));
      vals.push_back(xsect::signed_distance(c.core.back().point(1.0), h));
    }
    for (double v : vals)
      if (std::abs(std::abs(v) - c.radius) <= tol.eps_geom)
        throw GeneralPositionViolation("plane with offset " + std::to_string(h.offset) +
                                       " is tangent to component " + std::to_string(ci));
  }
}

namespace {

// Marching squares on f over a rectangle; loops with the inside (f < 0) on the left.
template <class F>
std::vector<Loop> trace_contours(const F& f, const Rect& rect, double h, double chordal_tol) {
  const int nu = std::max(2, static_cast<int>(std::ceil((rect.hi[0] - rect.lo[0]) / h)));
  const int nv = std::max(2, static_cast<int>(std::ceil((rect.hi[1] - rect.lo[1]) / h)));
  if (static_cast<long long>(nu) * nv > 16'000'000LL)
    throw GeneralPositionViolation("section tracer grid too large; plane is too close to tangency");
  const double du = (rect.hi[0] - rect.lo[0]) / nu, dv = (rect.hi[1] - rect.lo[1]) / nv;
  auto P = [&](int i, int j) { return Vec2{rect.lo[0] + du * i, rect.lo[1] + dv * j}; };
  std::vector<double> val(static_cast<std::size_t>((nu + 1) * (nv + 1)));
  auto V = [&](int i, int j) -> double& { return val[static_cast<std::size_t>(j * (nu + 1) + i)]; };
  for (int j = 0; j <= nv; ++j)
    for (int i = 0; i <= nu; ++i) V(i, j) = f(P(i, j));

  // Crossing point ids keyed by grid edge: horizontal (i,j)-(i+1,j) -> 2*idx, vertical -> 2*idx+1.
  std::map<long long, Vec2> crossing;
  auto edge_key = [&](int i, int j, bool vertical) { return 2LL * (j * (nu + 1) + i) + (vertical ? 1 : 0); };
  auto cross_pt = [&](int i, int j, bool vertical) {
    const long long k = edge_key(i, j, vertical);
    auto it = crossing.find(k);
    if (it != crossing.end()) return k;
    Vec2 a = P(i, j), b = vertical ? P(i, j + 1) : P(i + 1, j);
    double fa = V(i, j);
    for (int it2 = 0; it2 < 60; ++it2) {
      const Vec2 m = (a + b) * 0.5;
      const double fm = f(m);
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    crossing.emplace(k, (a + b) * 0.5);
    return k;
  };

  std::map<long long, long long> next;
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) {
      // CCW corners 00, 10, 11, 01 and edges bottom, right, top, left.
      const bool in[4] = {V(i, j) < 0, V(i + 1, j) < 0, V(i + 1, j + 1) < 0, V(i, j + 1) < 0};
      const long long ek[4] = {0, 0, 0, 0};
      (void)ek;
      int exits[2], entries[2], ne = 0, nn = 0;
      long long keys[4];
      for (int e = 0; e < 4; ++e) {
        const bool a = in[e], b = in[(e + 1) % 4];
        if (a == b) continue;
        switch (e) {
          case 0: keys[e] = cross_pt(i, j, false); break;
          case 1: keys[e] = cross_pt(i + 1, j, true); break;
          case 2: keys[e] = cross_pt(i, j + 1, false); break;
          default: keys[e] = cross_pt(i, j, true); break;
        }
        if (a) exits[ne++] = e;
        else entries[nn++] = e;
      }
      if (ne == 0) continue;
      if (ne == 1) {
        next[keys[exits[0]]] = keys[entries[0]];
        continue;
      }
      const double center = f(P(i, j) + Vec2{du * 0.5, dv * 0.5});
      const bool center_in = center < 0;
      for (int k = 0; k < 2; ++k) {
        const int e = exits[k];
        // Center inside: pair with the next entry counter-clockwise, else the previous.
        int partner = -1;
        for (int s = 1; s < 4; ++s) {
          const int cand = center_in ? (e + s) % 4 : (e + 4 - s) % 4;
          if (cand == entries[0] || cand == entries[1]) {
            partner = cand;
            break;
          }
        }
        next[keys[e]] = keys[partner];
      }
    }

  std::vector<Loop> loops;
  std::map<long long, bool> used;
  for (const auto& [start, nx] : next) {
    if (used[start]) continue;
    Loop loop;
    long long cur = start;
    while (!used[cur]) {
      used[cur] = true;
      loop.push_back(crossing.at(cur));
      auto it = next.find(cur);
      if (it == next.end()) break;
      cur = it->second;
    }
    if (loop.size() >= 3) loops.push_back(std::move(loop));
  }

  // Insert contour points at chord midpoints until the chordal error is met.
  auto grad = [&](const Vec2& x) {
    const double e = 1e-7 * std::max(1.0, h);
    return Vec2{(f(x + Vec2{e, 0}) - f(x - Vec2{e, 0})) / (2 * e), (f(x + Vec2{0, e}) - f(x - Vec2{0, e})) / (2 * e)};
  };
  for (auto& loop : loops) {
    for (int pass = 0; pass < 12; ++pass) {
      Loop refined;
      bool changed = false;
      for (std::size_t k = 0; k < loop.size(); ++k) {
        const Vec2& a = loop[k];
        const Vec2& b = loop[(k + 1) % loop.size()];
        refined.push_back(a);
        Vec2 m = (a + b) * 0.5;
        if (std::abs(f(m)) <= chordal_tol) continue;
        for (int it = 0; it < 30; ++it) {
          const double fm = f(m);
          const Vec2 g = grad(m);
          const double g2 = dot(g, g);
          if (g2 < 1e-20) break;
          m = m - g * (fm / g2);
          if (std::abs(fm) < 1e-14) break;
        }
        refined.push_back(m);
        changed = true;
      }
      loop = std::move(refined);
      if (!changed) break;
    }
  }
  return loops;
}

std::vector<PolygonWithHoles> nest_loops(std::vector<Loop> loops) {
  std::vector<PolygonWithHoles> polys;
  std::vector<Loop> holes;
  for (auto& l : loops) {
    const double a = signed_area(l);
    if (a > 0) polys.push_back({std::move(l), {}});
    else if (a < 0) holes.push_back(std::move(l));
  }
  std::sort(polys.begin(), polys.end(),
            [](const PolygonWithHoles& x, const PolygonWithHoles& y) { return signed_area(x.outer) < signed_area(y.outer); });
  const Tolerance tight{1e-12, 1e-9};
  for (auto& h : holes) {
    for (auto& p : polys) {
      if (point_in_polygon(h.front(), PolygonWithHoles{p.outer, {}}, tight) == Location::Inside &&
          signed_area(p.outer) > -signed_area(h)) {
        p.holes.push_back(std::move(h));
        break;
      }
    }
  }
  return polys;
}

}  // namespace

template <int D>
std::vector<Region<D>> Shape<D>::section(const Hyperplane<D>& h, const PlaneFrame<D>& frame, double chordal_tol,
                                         const Tolerance& tol) const {
  check_general_position(h, tol);
  std::vector<Region<D>> out;
  for (const auto& c : comps_) {
    double lo = kInf, hi = -kInf;
    for (const auto& p : c.core) {
      const auto [a, b] = p.signed_range(h);
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
    if (lo > c.radius || hi < -c.radius) continue;
    if constexpr (D == 2) {
      const double sc = frame.to_local(c.center);
      const double d = std::abs(xsect::signed_distance(c.center, h));
      if (c.kind == PrimitiveKind::Disk2D) {
        const double w = std::sqrt(c.radius * c.radius - d * d);
        out.push_back({sc - w, sc + w});
      } else {
        const double ro = c.major + c.radius, ri = c.major - c.radius;
        const double wo = std::sqrt(std::max(0.0, ro * ro - d * d));
        if (d < ri) {
          const double wi = std::sqrt(ri * ri - d * d);
          out.push_back({sc - wo, sc - wi});
          out.push_back({sc + wi, sc + wo});
        } else {
          out.push_back({sc - wo, sc + wo});
        }
      }
    } else {
      if (c.kind == PrimitiveKind::Ball) {
        const double d = xsect::signed_distance(c.center, h);
        const double rr = std::sqrt(c.radius * c.radius - d * d);
        const int n = std::max(16, static_cast<int>(std::ceil(kPi / std::acos(std::max(-1.0, 1.0 - chordal_tol / rr)))));
        const Vec2 cl = frame.to_local(c.center);
        Loop loop;
        for (int k = 0; k < n; ++k) {
          const double t = 2 * kPi * k / n;
          loop.push_back(cl + Vec2{rr * std::cos(t), rr * std::sin(t)});
        }
        out.push_back({std::move(loop), {}});
        continue;
      }
      // Local bounds of the component's box on the plane.
      const Box<3> b = c.bounds();
      Rect rect{{kInf, kInf}, {-kInf, -kInf}};
      for (int m = 0; m < 8; ++m) {
        const Vec3 corner{(m & 1) ? b.hi[0] : b.lo[0], (m & 2) ? b.hi[1] : b.lo[1], (m & 4) ? b.hi[2] : b.lo[2]};
        const Vec2 l = frame.to_local(corner);
        for (int k = 0; k < 2; ++k) {
          rect.lo[k] = std::min(rect.lo[k], l[k]);
          rect.hi[k] = std::max(rect.hi[k], l[k]);
        }
      }
      const double pad = 0.05 * c.radius;
      for (int k = 0; k < 2; ++k) {
        rect.lo[k] -= pad;
        rect.hi[k] += pad;
      }
      // Grid fine enough to resolve the smallest loop this plane can produce.
      double margin = kInf;
      for (const auto& p : c.core)
        for (double v : p.critical_values(h)) margin = std::min(margin, std::abs(std::abs(v) - c.radius));
      double step = c.radius / 6.0;
      if (std::isfinite(margin)) step = std::min(step, std::sqrt(2.0 * c.radius * margin) / 4.0);
      const Primitive<3>& prim = c;
      auto f = [&](const Vec2& l) { return prim.signed_distance(frame.to_world(l)); };
      auto loops = trace_contours(f, rect, step, chordal_tol);
      for (auto& poly : nest_loops(std::move(loops))) out.push_back(std::move(poly));
    }
  }
  return out;
}

template <int D>
std::vector<bool> Shape<D>::boundary_sheets_cut(const std::vector<Hyperplane<D>>& planes) const {
  std::vector<bool> out;
  for (const auto& c : comps_) {
    if (c.kind == PrimitiveKind::Annulus2D) {
      bool inner = false, outer = false;
      for (const auto& h : planes) {
        const double d = std::abs(xsect::signed_distance(c.center, h));
        inner |= d <= c.major - c.radius;
        outer |= d <= c.major + c.radius;
      }
      out.push_back(inner);
      out.push_back(outer);
      continue;
    }
    bool cut = false;
    for (const auto& h : planes)
      for (const auto& p : c.core) {
        const auto [lo, hi] = p.signed_range(h);
        const double m = (lo <= 0 && hi >= 0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
        cut |= m <= c.radius;
      }
    out.push_back(cut);
  }
  return out;
}

template <int D>
SectionSet<D> slice(const Shape<D>& shape, const std::vector<Hyperplane<D>>& planes, double chordal_tol,
                    const Tolerance& tol) {
  SectionSet<D> set(planes);
  for (int i = 0; i < set.plane_count(); ++i)
    for (auto& r : shape.section(planes[static_cast<std::size_t>(i)], set.on_plane(i).frame, chordal_tol, tol))
      set.add(i, std::move(r));
  return set;
}

template <int D>
ReachField<D>::ReachField(const Shape<D>& shape, const Arrangement<D>& arr, int n_samples) {
  per_cell_.assign(arr.cells().size(), kInf);
  counts_.assign(arr.cells().size(), 0);
  if (shape.empty()) return;
  Box<D> clip = arr.bbox();
  samples_ = shape.boundary_samples(n_samples, clip);
  const Box<D>& box = arr.bbox();
  for (const auto& s : samples_) {
    auto touch = [&](const Vec<D>& x, double radius) {
      if (!box.contains(x, arr.tolerance().eps_geom)) return;
      for (int id : arr.cells_containing(x)) {
        auto& v = per_cell_[static_cast<std::size_t>(id)];
        v = std::min(v, radius);
        ++counts_[static_cast<std::size_t>(id)];
      }
    };
    touch(s.a, std::min(s.r_int, s.has_ext ? s.r_ext : kInf));
    touch(s.m_int, s.r_int);
    if (s.has_ext) touch(s.m_ext, s.r_ext);
  }
}

template struct CorePiece<2>;
template struct CorePiece<3>;
template struct Primitive<2>;
template struct Primitive<3>;
template class Shape<2>;
template class Shape<3>;
template class ReachField<2>;
template class ReachField<3>;
template SectionSet<2> slice(const Shape<2>&, const std::vector<Hyperplane<2>>&, double, const Tolerance&);
template SectionSet<3> slice(const Shape<3>&, const std::vector<Hyperplane<3>>&, double, const Tolerance&);

}  // namespace xsect
