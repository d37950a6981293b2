#pragma once

#include <vector>

#include "xsect/arrangement.hpp"
#include "xsect/exact.hpp"
#include "xsect/sections.hpp"

namespace xsect {

/// Cell of x plus whether some nearest point of x on the cell boundary lies
/// in a section of that face's plane (sections are closed; bbox faces never
/// match). x must be inside the bbox.
template <int D>
struct Membership {
  int cell = -1;
  bool inside = false;
};

template <int D>
Membership<D> classify_point(const Vec<D>& x, const Arrangement<D>& arr, const SectionSet<D>& sections);

template <int D>
bool in_reconstruction(const Vec<D>& x, const Arrangement<D>& arr, const SectionSet<D>& sections) {
  return classify_point(x, arr, sections).inside;
}

/// Exact 2D reconstruction. Each piece is {x in C : f is a nearest face of x,
/// x projects into one section interval of f}, a convex polygon computed
/// with rational half-plane clipping; the pieces are merged by cancelling
/// shared boundary along each supporting line.
struct Reconstruction2D {
  std::vector<std::vector<exact::PolygonQ>> per_cell;
  std::vector<exact::PolygonQ> global;
  int pieces = 0;
};

/// Convex pieces of R_C for one cell, counter-clockwise.
std::vector<exact::LoopQ> reconstruction_pieces_2d(const Cell<2>& cell, const Arrangement<2>& arr,
                                                   const SectionSet<2>& sections);

Reconstruction2D reconstruct_2d(const Arrangement<2>& arr, const SectionSet<2>& sections);

/// Union of interior-disjoint counter-clockwise polygons, as polygons with
/// holes (outer CCW, holes CW), by exact edge cancellation.
std::vector<exact::PolygonQ> union_of_tiles(const std::vector<exact::LoopQ>& tiles);

}  // namespace xsect
