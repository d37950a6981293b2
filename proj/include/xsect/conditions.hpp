#pragma once

#include <optional>
#include <vector>

#include "xsect/arrangement.hpp"
#include "xsect/sections.hpp"
#include "xsect/shapes.hpp"

namespace xsect {

enum class CheckStatus { Pass, Fail, Inconclusive, NotEvaluable };

const char* to_string(CheckStatus s);

struct ConditionOptions {
  int reach_samples = 1000;   ///< boundary samples for reach_C
  int contour_samples = 64;   ///< per section contour, for alpha_C (3D)
  int medial_samples = 400;   ///< per side, for the separation check
  /// Replaces the sampled reach_C of every cell (a known lower bound).
  std::optional<double> reach_lower_bound;
};

/// Per-cell density and transversality evaluation.
struct CellConditions {
  int cell = -1;
  double h = 0.0;
  double reach = 0.0;
  double alpha = 0.0;
  double reach_error = 0.0;  ///< sampled reach_C minus its half-density estimate
  double margin_c1 = 0.0;    ///< reach - h
  double margin_c2 = 0.0;    ///< (1 - sin alpha) reach / 2 - h
  CheckStatus c1 = CheckStatus::NotEvaluable;
  CheckStatus c2 = CheckStatus::NotEvaluable;
  int reach_samples = 0;
  int contour_samples = 0;

  bool c1_pass() const { return c1 == CheckStatus::Pass; }
  bool c2_pass() const { return c2 == CheckStatus::Pass; }
};

template <int D>
struct SeparationResult {
  bool pass = true;
  int internal_checked = 0;
  int external_checked = 0;
  std::vector<MedialSample<D>> counterexamples;  ///< at most a handful
};

template <int D>
struct ConditionReport {
  bool evaluable = false;  ///< false without a ground-truth shape
  std::vector<CellConditions> cells;
  SeparationResult<D> separation;
  bool boundary_cut_pass = false;
  std::vector<bool> sheets_cut;

  bool all_c1() const;
  bool all_c2() const;
  /// Cells where C2 passes but C1 does not (must stay empty).
  int implication_violations() const;
};

/// Max over sampled section-contour points a in the cell of the angle between
/// the cutting plane and the boundary normal at a. Zero when the cell's faces
/// carry no sections. Throws GeneralPositionViolation on tangential contact.
template <int D>
double alpha_cell(const Shape<D>& shape, const Cell<D>& cell, const Arrangement<D>& arr,
                  const SectionSet<D>& sections, int contour_samples, int* used = nullptr);

/// Density: h_C < reach_C, with an inconclusive band of twice `reach_error`.
CheckStatus density_status(double h, double reach, double reach_error, double eps);
/// Transversality: h_C < (1 - sin alpha_C) reach_C / 2.
CheckStatus transversality_status(double h, double reach, double alpha, double reach_error, double eps);

template <int D>
std::vector<CellConditions> check_cells(const Shape<D>& shape, const Arrangement<D>& arr,
                                        const SectionSet<D>& sections, const ConditionOptions& opt);

/// Internal medial samples must lie in R, external ones (inside the bbox) outside.
template <int D>
SeparationResult<D> check_separation_sampled(const Shape<D>& shape, const Arrangement<D>& arr,
                                             const SectionSet<D>& sections, int n);

/// Every boundary sheet of every component is met by some cutting plane.
template <int D>
bool check_boundary_cut(const Shape<D>& shape, const std::vector<Hyperplane<D>>& planes,
                        std::vector<bool>* per_sheet = nullptr);

template <int D>
ConditionReport<D> evaluate_conditions(const Shape<D>* shape, const Arrangement<D>& arr,
                                       const SectionSet<D>& sections, const ConditionOptions& opt);

}  // namespace xsect
