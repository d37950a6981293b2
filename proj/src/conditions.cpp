#include "xsect/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xsect/reconstruction.hpp"
#include "xsect/topology.hpp"

namespace xsect {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxCounterexamples = 8;
}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::NotEvaluable: return "not_evaluable";
  }
  return "?";
}

namespace {

// Contour points of one section in world coordinates.
std::vector<Vec2> contour_points(const PlaneSections<2>& ps, const Interval& iv, int) {
  return {ps.frame.to_world(iv.lo), ps.frame.to_world(iv.hi)};
}

std::vector<Vec3> contour_points(const PlaneSections<3>& ps, const PolygonWithHoles& poly, int per_loop) {
  std::vector<Vec3> out;
  auto add_loop = [&](const Loop& loop) {
    double perimeter = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) perimeter += norm(loop[(i + 1) % loop.size()] - loop[i]);
    const double step = perimeter / std::max(1, per_loop);
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Vec2 a = loop[i], b = loop[(i + 1) % loop.size()];
      const int m = std::max(1, static_cast<int>(std::ceil(norm(b - a) / step)));
      for (int k = 0; k < m; ++k) out.push_back(ps.frame.to_world(a + (b - a) * (static_cast<double>(k) / m)));
    }
  };
  add_loop(poly.outer);
  for (const auto& h : poly.holes) add_loop(h);
  return out;
}

}  // namespace

template <int D>
double alpha_cell(const Shape<D>& shape, const Cell<D>& cell, const Arrangement<D>& arr,
                  const SectionSet<D>& sections, int contour_samples, int* used) {
  const Tolerance& tol = arr.tolerance();
  double alpha = 0.0;
  int count = 0;
  for (int gid : sections_of_cell(cell, arr, sections)) {
    const auto [plane, region] = sections.from_global(gid);
    const auto& ps = sections.on_plane(plane);
    for (const auto& x : contour_points(ps, ps.regions[static_cast<std::size_t>(region)], contour_samples)) {
      if (!cell.contains(x, tol.eps_geom)) continue;
      const Vec<D> a = shape.project_to_boundary(x);
      const Vec<D> n = shape.boundary_normal(a, tol);
      const double s = std::min(1.0, std::abs(dot(n, ps.plane.normal)));
      const double angle = std::asin(s);
      if (angle >= M_PI / 2 - tol.eps_angle)
        throw GeneralPositionViolation("alpha_cell: tangential contact between a section contour and its plane");
      alpha = std::max(alpha, angle);
      ++count;
    }
  }
  if (used) *used = count;
  return alpha;
}

namespace {

CheckStatus status_from_margin(double h, double margin, double band) {
  if (!std::isfinite(h)) return CheckStatus::Fail;
  if (std::isnan(margin)) return CheckStatus::Inconclusive;
  if (std::abs(margin) <= band) return CheckStatus::Inconclusive;
  return margin > 0 ? CheckStatus::Pass : CheckStatus::Fail;
}

}  // namespace

CheckStatus density_status(double h, double reach, double reach_error, double eps) {
  // A cell that holds no boundary or medial point has an empty minimum
  // (reach_C = +inf) and nothing to reconstruct; it passes vacuously.
  if (!std::isfinite(reach)) return CheckStatus::Pass;
  if (!std::isfinite(h)) return CheckStatus::Fail;
  return status_from_margin(h, reach - h, std::max(2.0 * reach_error, eps));
}

CheckStatus transversality_status(double h, double reach, double alpha, double reach_error, double eps) {
  if (!std::isfinite(reach)) return CheckStatus::Pass;
  if (!std::isfinite(h)) return CheckStatus::Fail;
  const double factor = 0.5 * (1.0 - std::sin(alpha));
  return status_from_margin(h, factor * reach - h, std::max(2.0 * factor * reach_error, eps));
}

template <int D>
std::vector<CellConditions> check_cells(const Shape<D>& shape, const Arrangement<D>& arr,
                                        const SectionSet<D>& sections, const ConditionOptions& opt) {
  const auto& cells = arr.cells();
  std::vector<CellConditions> out(cells.size());
  std::optional<ReachField<D>> fine, coarse;
  if (!opt.reach_lower_bound) {
    fine.emplace(shape, arr, opt.reach_samples);
    coarse.emplace(shape, arr, std::max(1, opt.reach_samples / 2));
  }
  const double eps = arr.tolerance().eps_geom;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CellConditions& c = out[i];
    c.cell = cells[i].id;
    c.h = cell_height(cells[i], arr);
    if (opt.reach_lower_bound) {
      c.reach = *opt.reach_lower_bound;
      c.reach_error = 0.0;
    } else {
      c.reach = fine->in_cell(c.cell);
      c.reach_samples = fine->samples_in_cell(c.cell);
      const double r2 = coarse->in_cell(c.cell);
      c.reach_error = std::isfinite(c.reach) && std::isfinite(r2) ? std::abs(r2 - c.reach) : 0.0;
    }
    c.alpha = alpha_cell(shape, cells[i], arr, sections, opt.contour_samples, &c.contour_samples);
    c.margin_c1 = c.reach - c.h;
    c.margin_c2 = 0.5 * (1.0 - std::sin(c.alpha)) * c.reach - c.h;
    c.c1 = density_status(c.h, c.reach, c.reach_error, eps);
    c.c2 = transversality_status(c.h, c.reach, c.alpha, c.reach_error, eps);
  }
  return out;
}

template <int D>
SeparationResult<D> check_separation_sampled(const Shape<D>& shape, const Arrangement<D>& arr,
                                             const SectionSet<D>& sections, int n) {
  SeparationResult<D> res;
  if (shape.empty()) return res;
  const Box<D>& box = arr.bbox();
  for (MedialSide side : {MedialSide::Internal, MedialSide::External}) {
    for (const auto& s : shape.medial_samples(side, n, box)) {
      if (!box.contains(s.m)) continue;
      const bool inside = in_reconstruction(s.m, arr, sections);
      const bool ok = side == MedialSide::Internal ? inside : !inside;
      (side == MedialSide::Internal ? res.internal_checked : res.external_checked)++;
      if (!ok) {
        res.pass = false;
        if (static_cast<int>(res.counterexamples.size()) < kMaxCounterexamples) res.counterexamples.push_back(s);
      }
    }
  }
  return res;
}

template <int D>
bool check_boundary_cut(const Shape<D>& shape, const std::vector<Hyperplane<D>>& planes, std::vector<bool>* per_sheet) {
  const std::vector<bool> cut = shape.boundary_sheets_cut(planes);
  if (per_sheet) *per_sheet = cut;
  return std::all_of(cut.begin(), cut.end(), [](bool b) { return b; });
}

template <int D>
bool ConditionReport<D>::all_c1() const {
  return evaluable && std::all_of(cells.begin(), cells.end(), [](const CellConditions& c) { return c.c1_pass(); });
}

template <int D>
bool ConditionReport<D>::all_c2() const {
  return evaluable && std::all_of(cells.begin(), cells.end(), [](const CellConditions& c) { return c.c2_pass(); });
}

template <int D>
int ConditionReport<D>::implication_violations() const {
  return static_cast<int>(
      std::count_if(cells.begin(), cells.end(), [](const CellConditions& c) { return c.c2_pass() && !c.c1_pass(); }));
}

template <int D>
ConditionReport<D> evaluate_conditions(const Shape<D>* shape, const Arrangement<D>& arr,
                                       const SectionSet<D>& sections, const ConditionOptions& opt) {
  ConditionReport<D> rep;
  if (!shape) {
    for (const auto& cell : arr.cells()) {
      CellConditions c;
      c.cell = cell.id;
      c.h = cell_height(cell, arr);
      c.reach = opt.reach_lower_bound.value_or(kInf);
      c.margin_c1 = c.reach - c.h;
      if (opt.reach_lower_bound) {
        // Density needs only h_C and reach_C; alpha_C needs boundary normals.
        c.c1 = density_status(c.h, c.reach, 0.0, arr.tolerance().eps_geom);
      }
      rep.cells.push_back(c);
    }
    return rep;
  }
  rep.evaluable = true;
  rep.cells = check_cells(*shape, arr, sections, opt);
  rep.separation = check_separation_sampled(*shape, arr, sections, opt.medial_samples);
  rep.boundary_cut_pass = check_boundary_cut(*shape, arr.planes(), &rep.sheets_cut);
  return rep;
}

#define XSECT_INSTANTIATE(D)                                                                                        \
  template double alpha_cell(const Shape<D>&, const Cell<D>&, const Arrangement<D>&, const SectionSet<D>&, int,    \
                             int*);                                                                                 \
  template std::vector<CellConditions> check_cells(const Shape<D>&, const Arrangement<D>&, const SectionSet<D>&,   \
                                                   const ConditionOptions&);                                        \
  template SeparationResult<D> check_separation_sampled(const Shape<D>&, const Arrangement<D>&,                    \
                                                        const SectionSet<D>&, int);                                 \
  template bool check_boundary_cut(const Shape<D>&, const std::vector<Hyperplane<D>>&, std::vector<bool>*);        \
  template struct ConditionReport<D>;                                                                               \
  template ConditionReport<D> evaluate_conditions(const Shape<D>*, const Arrangement<D>&, const SectionSet<D>&,    \
                                                  const ConditionOptions&);

XSECT_INSTANTIATE(2)
XSECT_INSTANTIATE(3)
#undef XSECT_INSTANTIATE

}  // namespace xsect
