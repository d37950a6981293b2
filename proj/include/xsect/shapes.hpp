#pragma once

#include <limits>
#include <string>
#include <vector>

#include "xsect/arrangement.hpp"
#include "xsect/sections.hpp"

namespace xsect {

/// Piece of a primitive's core curve: a segment [a, b] or a circular arc
/// center + rho (cos t e1 + sin t e2), t in [t0, t1].
template <int D>
struct CorePiece {
  bool is_arc = false;
  Vec<D> a{}, b{};
  Vec<D> center{}, e1{}, e2{};
  double rho = 0.0, t0 = 0.0, t1 = 0.0;

  Vec<D> point(double u) const;  ///< u in [0, 1]
  double length() const;
  Vec<D> closest(const Vec<D>& x) const;
  /// Range of signed distances to h over the piece.
  std::pair<double, double> signed_range(const Hyperplane<D>& h) const;
  /// Values of signed distance at points where the core is parallel to h.
  std::vector<double> critical_values(const Hyperplane<D>& h) const;
};

enum class PrimitiveKind { Ball, SolidTorus, Capsule, Tube, Disk2D, Annulus2D };

std::string to_string(PrimitiveKind k);

/// Solid swept by a ball of radius `radius` along a core curve.
template <int D>
struct Primitive {
  PrimitiveKind kind{};
  std::vector<CorePiece<D>> core;
  double radius = 0.0;
  bool closed_core = false;  ///< torus / annulus: the core has no ends

  // Construction parameters kept for reporting and analytic reach.
  Vec<D> center{};
  Vec<D> axis{};
  double major = 0.0;   ///< torus R, annulus mid radius
  double fillet = 0.0;  ///< tube turning radius
  std::vector<Vec<D>> polyline;

  Vec<D> closest_core_point(const Vec<D>& x) const;
  double signed_distance(const Vec<D>& x) const;
  Box<D> bounds() const;
  /// Number of boundary sheets (annulus: 2, otherwise 1).
  int boundary_sheets() const { return kind == PrimitiveKind::Annulus2D ? 2 : 1; }
};

Primitive<3> make_ball(const Vec3& c, double r);
Primitive<3> make_torus(const Vec3& c, const Vec3& axis, double R, double r);
Primitive<3> make_capsule(const Vec3& p, const Vec3& q, double r);
/// Polyline core with corners replaced by circular arcs of radius `fillet`.
Primitive<3> make_tube(const std::vector<Vec3>& core, double r, double fillet);
Primitive<2> make_disk(const Vec2& c, double r);
Primitive<2> make_annulus(const Vec2& c, double r_in, double r_out);

enum class MedialSide { Internal, External };

template <int D>
struct MedialSample {
  Vec<D> m{};
  MedialSide side = MedialSide::Internal;
  double radius = 0.0;
  Vec<D> witness{};
};

/// Boundary point with both medial partners (external may be absent).
template <int D>
struct BoundarySample {
  Vec<D> a{};
  Vec<D> normal{};
  Vec<D> m_int{};
  double r_int = 0.0;
  bool has_ext = false;
  Vec<D> m_ext{};
  double r_ext = 0.0;
};

/// Disjoint union of primitives.
template <int D>
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<Primitive<D>> comps);

  const std::vector<Primitive<D>>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }

  double signed_distance(const Vec<D>& x) const;
  /// Same answer as signed_distance(x) <= 0, with early exits.
  bool contains(const Vec<D>& x) const;
  /// Outward unit normal at a boundary point; throws if a is farther than max(eps_geom, 1e-12 * scale) from it.
  Vec<D> boundary_normal(const Vec<D>& a, const Tolerance& tol) const;
  /// Nearest boundary point (projection onto the boundary).
  Vec<D> project_to_boundary(const Vec<D>& x) const;
  Box<D> bounds() const;

  /// Analytic reach: per-primitive closed forms, and half the smallest
  /// clearance between components.
  double reach() const { return reach_; }
  /// Smallest surface-to-surface gap between distinct components (+inf if < 2 comps).
  double min_clearance() const;

  /// Radius of the maximal outside ball touching at `a` along `normal`,
  /// found by bisection; +inf if it leaves `clip`.
  double external_radius(const Vec<D>& a, const Vec<D>& normal, const Box<D>& clip) const;

  std::vector<MedialSample<D>> medial_samples(MedialSide side, int n, const Box<D>& clip) const;
  /// About `n` boundary points spread over all components, with medial partners.
  std::vector<BoundarySample<D>> boundary_samples(int n, const Box<D>& clip) const;

  /// Sections on a plane, in `frame` coordinates. Throws
  /// GeneralPositionViolation when the plane is within eps of tangency.
  std::vector<Region<D>> section(const Hyperplane<D>& h, const PlaneFrame<D>& frame, double chordal_tol,
                                 const Tolerance& tol) const;
  /// Throws GeneralPositionViolation if h is tangent to the boundary within eps.
  void check_general_position(const Hyperplane<D>& h, const Tolerance& tol) const;

  /// Per primitive and boundary sheet: does some plane meet that sheet.
  std::vector<bool> boundary_sheets_cut(const std::vector<Hyperplane<D>>& planes) const;

 private:
  double compute_reach() const;

  std::vector<Primitive<D>> comps_;
  double reach_ = std::numeric_limits<double>::infinity();
};

/// Build a SectionSet by slicing `shape` with every plane.
template <int D>
SectionSet<D> slice(const Shape<D>& shape, const std::vector<Hyperplane<D>>& planes, double chordal_tol,
                    const Tolerance& tol);

/// reach_C: min over boundary samples a with a in C or m(a) in C of d(a, m(a)).
/// +inf when no boundary sample qualifies.
template <int D>
class ReachField {
 public:
  ReachField(const Shape<D>& shape, const Arrangement<D>& arr, int n_samples);
  double in_cell(int cell) const { return per_cell_.at(static_cast<std::size_t>(cell)); }
  int samples_in_cell(int cell) const { return counts_.at(static_cast<std::size_t>(cell)); }
  const std::vector<BoundarySample<D>>& samples() const { return samples_; }

 private:
  std::vector<BoundarySample<D>> samples_;
  std::vector<double> per_cell_;
  std::vector<int> counts_;
};

}  // namespace xsect
