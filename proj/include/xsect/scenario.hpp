#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "xsect/conditions.hpp"
#include "xsect/convex.hpp"
#include "xsect/grid.hpp"
#include "xsect/reconstruction.hpp"
#include "xsect/scene.hpp"
#include "xsect/topology.hpp"

namespace xsect {

enum class Verdict { TopologyMatch, ConnectivityOnlyMatch, Mismatch, ConditionsFailedNoGuarantee };

const char* to_string(Verdict v);

struct RunOptions {
  std::optional<double> voxel;      ///< overrides the scene's grid.voxel
  bool check_stability = true;      ///< recompute Betti numbers at half the voxel size
  bool timings = false;             ///< record wall-clock timings (non-deterministic)
  ConditionOptions conditions;
};

/// Ground-truth Betti numbers from the primitive types (a closed core adds
/// one loop).
template <int D>
TopologySummary analytic_topology(const Shape<D>& shape);

template <int D>
struct ScenarioReport {
  std::string name;
  ReconstructionMode mode = ReconstructionMode::Standard;
  int planes = 0, cells = 0, sections = 0;

  ConditionReport<D> conditions;

  TopologySummary topo_r;                  ///< cubical (both dimensions)
  std::optional<TopologySummary> topo_r_exact;  ///< 2D exact pipeline
  std::optional<TopologySummary> topo_o;        ///< analytic ground truth
  std::optional<TopologySummary> topo_o_cubical;
  std::optional<bool> stable;              ///< cubical Betti of R unchanged at half voxel
  double voxel = 0.0;
  int voxels_flipped = 0;  ///< R voxels changed by drop_unanchored_components

  bool connectivity_evaluated = false;
  bool connectivity_match = false;
  std::vector<BijectionResult> bijection;  ///< per cell id

  std::optional<ConvReconstruction<D>> conv;
  std::optional<ConformityResult> conformity;

  bool betti_match = false;
  Verdict verdict = Verdict::ConditionsFailedNoGuarantee;
  std::map<std::string, double> timings_ms;

  // Artifacts kept for export (not serialized).
  std::shared_ptr<const Arrangement<D>> arrangement;
  std::shared_ptr<const SectionSet<D>> section_set;
  std::optional<Grid<D>> grid;
  std::optional<GridLabels<D>> labels;
  std::optional<Reconstruction2D> recon2d;
};

template <int D>
ScenarioReport<D> run_scenario(const SceneData<D>& scene, const RunOptions& opt = {});

/// Verdict from the comparison outcomes and the condition gates.
Verdict decide_verdict(bool has_truth, bool betti_match, bool connectivity_match, bool c1_all, bool c2_all);

template <int D>
nlohmann::json report_to_json(const ScenarioReport<D>& report);

nlohmann::json topology_json(const TopologySummary& t, int dim);

/// JSON-friendly number: finite values as-is, infinities as "inf"/"-inf".
nlohmann::json json_number(double x);

}  // namespace xsect
