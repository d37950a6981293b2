#pragma once

#include <vector>

#include "xsect/arrangement.hpp"
#include "xsect/sections.hpp"

namespace xsect {

template <int D>
struct LiftResult {
  Vec<D> lift_point{};
  double t_star = 0.0;
  std::vector<int> opposing_faces;  ///< indices into Cell::faces
  bool finite = true;               ///< false: cell unbounded along -n_f, t_star = +inf
};

/// Lift of a point `a` lying on face `face` of `cell`: travel along the
/// inward normal until another face becomes equally near.
/// Throws GeometryError if `a` is not on that face.
template <int D>
LiftResult<D> lift_point(const Vec<D>& a, int face, const Cell<D>& cell, const Tolerance& tol);

/// Piecewise-linear lift of the segment [p, q] on a 2D cell edge.
struct LiftedPolyline {
  Vec2 source_p{}, source_q{};
  std::vector<double> params;     ///< breakpoint positions in [0, 1] along p -> q
  std::vector<Vec2> vertices;     ///< lifts of the breakpoints, parallel to params
};

LiftedPolyline lift_polyline(const Vec2& p, const Vec2& q, int face, const Cell<2>& cell, const Tolerance& tol);

/// A connected cluster of skeleton points whose two nearest points lie in
/// the given sections A (on face f1) and B (on face f2).
template <int D>
struct OverlapComponent {
  int samples = 0;
  Vec<D> representative{};
};

/// Sampled approximation of lift(A) ∩ lift(B). `resolution` is the sample
/// spacing on A; neighbouring samples whose lifts both hit B are clustered.
template <int D>
std::vector<OverlapComponent<D>> lift_overlap_components(const SectionSet<D>& sections, int plane_a, int region_a,
                                                         int f1, int plane_b, int region_b, int f2,
                                                         const Cell<D>& cell, double resolution,
                                                         const Tolerance& tol);

}  // namespace xsect
