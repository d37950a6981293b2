#include "xsect/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace xsect {

using nlohmann::json;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::TopologyMatch: return "TopologyMatch";
    case Verdict::ConnectivityOnlyMatch: return "ConnectivityOnlyMatch";
    case Verdict::Mismatch: return "Mismatch";
    case Verdict::ConditionsFailedNoGuarantee: return "ConditionsFailed-NoGuarantee";
  }
  return "?";
}

json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return nullptr;
  return x > 0 ? "inf" : "-inf";
}

template <int D>
TopologySummary analytic_topology(const Shape<D>& shape) {
  TopologySummary t;
  for (const auto& c : shape.components()) {
    ++t.beta0;
    const int loops = c.closed_core ? 1 : 0;
    t.beta1 += loops;
    if constexpr (D == 2) t.per_component_holes.push_back(loops);
  }
  std::sort(t.per_component_holes.begin(), t.per_component_holes.end());
  t.euler = t.beta0 - t.beta1 + t.beta2;
  return t;
}

Verdict decide_verdict(bool has_truth, bool betti_match, bool connectivity_match, bool c1_all, bool c2_all) {
  if (!has_truth) return Verdict::ConditionsFailedNoGuarantee;
  if (betti_match && connectivity_match) return Verdict::TopologyMatch;
  if ((!connectivity_match && c1_all) || (!betti_match && c2_all)) return Verdict::Mismatch;
  if (connectivity_match) return Verdict::ConnectivityOnlyMatch;
  return Verdict::ConditionsFailedNoGuarantee;
}

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(bool on) : on_(on), t0_(std::chrono::steady_clock::now()) {}
  void lap(std::map<std::string, double>& out, const std::string& key) {
    if (!on_) return;
    const auto t1 = std::chrono::steady_clock::now();
    out[key] = std::chrono::duration<double, std::milli>(t1 - t0_).count();
    t0_ = t1;
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace

template <int D>
ScenarioReport<D> run_scenario(const SceneData<D>& scene, const RunOptions& opt) {
  ScenarioReport<D> rep;
  Stopwatch sw(opt.timings);
  rep.name = scene.name;
  rep.mode = scene.mode;
  const Shape<D>* shape = scene.shape ? &*scene.shape : nullptr;

  auto arr = std::make_shared<Arrangement<D>>(scene.planes, scene.bbox, scene.tol);
  rep.arrangement = arr;
  rep.planes = static_cast<int>(scene.planes.size());
  rep.cells = static_cast<int>(arr->cells().size());

  std::shared_ptr<SectionSet<D>> sections;
  double chordal = 0.0;  // polygonization error of the sections, if known
  if (scene.explicit_sections) {
    sections = std::make_shared<SectionSet<D>>(*scene.explicit_sections);
  } else {
    chordal = scene.chordal_tol > 0 ? scene.chordal_tol : shape->reach() / 100.0;
    sections = std::make_shared<SectionSet<D>>(slice(*shape, scene.planes, chordal, scene.tol));
  }
  rep.section_set = sections;
  rep.sections = sections->total();
  sw.lap(rep.timings_ms, "sections");

  ConditionOptions copt = opt.conditions;
  if (scene.reach_lower_bound) copt.reach_lower_bound = scene.reach_lower_bound;
  rep.conditions = evaluate_conditions(shape, *arr, *sections, copt);
  sw.lap(rep.timings_ms, "conditions");

  rep.voxel = opt.voxel.value_or(scene.voxel);
  rep.grid = Grid<D>::covering(scene.bbox, rep.voxel);
  rep.labels = classify_grid_parallel(*rep.grid, *arr, *sections, shape);
  rep.voxels_flipped = drop_unanchored_components(rep.labels->in_r, *rep.grid, rep.labels->cell, *arr);
  sw.lap(rep.timings_ms, "grid");

  rep.topo_r = cubical_betti<D>(rep.labels->in_r, rep.grid->n);
  if (shape) {
    rep.topo_o = analytic_topology(*shape);
    rep.topo_o_cubical = cubical_betti<D>(rep.labels->in_o, rep.grid->n);
  }
  if (opt.check_stability) {
    const Grid<D> fine = Grid<D>::covering(scene.bbox, rep.voxel / 2);
    GridLabels<D> fl = classify_grid_parallel(fine, *arr, *sections, static_cast<const Shape<D>*>(nullptr));
    drop_unanchored_components(fl.in_r, fine, fl.cell, *arr);
    rep.stable = cubical_betti<D>(fl.in_r, fine.n).same_betti(rep.topo_r);
  }
  sw.lap(rep.timings_ms, "topology");

  if constexpr (D == 2) {
    rep.recon2d = reconstruct_2d(*arr, *sections);
    rep.topo_r_exact = betti_2d(rep.recon2d->global);
    sw.lap(rep.timings_ms, "exact_2d");
  }

  if (shape) {
    rep.connectivity_evaluated = true;
    rep.bijection = component_bijection_all(*arr, *sections, *rep.grid, *rep.labels);
    rep.connectivity_match = std::all_of(rep.bijection.begin(), rep.bijection.end(),
                                         [](const BijectionResult& b) { return b.match; });
    sw.lap(rep.timings_ms, "connectivity");
  }

  if (scene.mode == ReconstructionMode::ConvexBodies) {
    rep.conv = reconstruct_convex_mode(*arr, *sections, *rep.grid, *rep.labels);
    rep.conformity = check_conformity(*rep.conv, *arr, *sections, 400,
                                      std::max(1e-6 * scene.bbox.diameter(), 2.0 * chordal));
    sw.lap(rep.timings_ms, "convex");
  }

  if (shape) {
    const TopologySummary& measured = rep.topo_r_exact ? *rep.topo_r_exact : rep.topo_r;
    if (scene.mode == ReconstructionMode::ConvexBodies) {
      rep.betti_match = rep.conv->beta0 == rep.topo_o->beta0 && rep.conformity->pass;
    } else {
      rep.betti_match = measured.same_betti(*rep.topo_o);
      if constexpr (D == 2) rep.betti_match = rep.betti_match && measured.per_component_holes == rep.topo_o->per_component_holes;
    }
  }
  rep.verdict = decide_verdict(shape != nullptr, rep.betti_match, rep.connectivity_match, rep.conditions.all_c1(),
                               rep.conditions.all_c2());
  return rep;
}

json topology_json(const TopologySummary& t, int dim) {
  json j = {{"beta0", t.beta0}, {"beta1", t.beta1}, {"euler", t.euler}};
  if (dim == 3) j["beta2"] = t.beta2;
  if (dim == 2 && !t.per_component_holes.empty()) j["per_component_holes"] = t.per_component_holes;
  return j;
}

namespace {

json partition_json(const ConnectivityPartition& p) {
  return {{"blocks", p.blocks}, {"untouched_components", p.untouched_components}};
}

template <int D>
json conditions_json(const ConditionReport<D>& c) {
  json cells = json::array();
  for (const auto& cc : c.cells) {
    cells.push_back({{"cell", cc.cell},
                     {"h", json_number(cc.h)},
                     {"reach", json_number(cc.reach)},
                     {"reach_error", json_number(cc.reach_error)},
                     {"alpha", json_number(cc.alpha)},
                     {"margin_c1", json_number(cc.margin_c1)},
                     {"margin_c2", json_number(cc.margin_c2)},
                     {"c1", to_string(cc.c1)},
                     {"c2", to_string(cc.c2)},
                     {"reach_samples", cc.reach_samples},
                     {"contour_samples", cc.contour_samples}});
  }
  json j = {{"evaluable", c.evaluable}, {"cells", cells}};
  if (!c.evaluable) {
    j["status"] = "not_evaluable";
    return j;
  }
  j["c1_all"] = c.all_c1();
  j["c2_all"] = c.all_c2();
  j["implication_violations"] = c.implication_violations();
  json cex = json::array();
  for (const auto& s : c.separation.counterexamples) {
    json m = json::array();
    for (int k = 0; k < D; ++k) m.push_back(s.m[k]);
    cex.push_back({{"point", m}, {"side", s.side == MedialSide::Internal ? "internal" : "external"}});
  }
  j["separation"] = {{"pass", c.separation.pass},
                     {"internal_checked", c.separation.internal_checked},
                     {"external_checked", c.separation.external_checked},
                     {"counterexamples", cex}};
  j["boundary_cut"] = {{"pass", c.boundary_cut_pass}, {"per_sheet", c.sheets_cut}};
  return j;
}

}  // namespace

template <int D>
json report_to_json(const ScenarioReport<D>& r) {
  json j;
  j["schema"] = 1;
  j["scene"] = r.name;
  j["dim"] = D;
  j["mode"] = r.mode == ReconstructionMode::Standard ? "standard" : "convex";
  j["arrangement"] = {{"planes", r.planes}, {"cells", r.cells}};
  j["sections"] = r.sections;
  j["conditions"] = conditions_json(r.conditions);
  json topo = {{"R", topology_json(r.topo_r, D)}, {"voxel", r.voxel}};
  if (r.grid) topo["grid"] = r.grid->n;
  topo["voxels_flipped"] = r.voxels_flipped;
  if (r.topo_r_exact) topo["R_exact"] = topology_json(*r.topo_r_exact, D);
  topo["O"] = r.topo_o ? topology_json(*r.topo_o, D) : json(nullptr);
  if (r.topo_o_cubical) topo["O_cubical"] = topology_json(*r.topo_o_cubical, D);
  topo["stable_under_refinement"] = r.stable ? json(*r.stable) : json(nullptr);
  topo["betti_match"] = r.topo_o ? json(r.betti_match) : json(nullptr);
  j["topology"] = topo;
  json conn = {{"evaluated", r.connectivity_evaluated}};
  if (r.connectivity_evaluated) {
    conn["match"] = r.connectivity_match;
    json mism = json::array(), per = json::array();
    for (std::size_t c = 0; c < r.bijection.size(); ++c) {
      const auto& b = r.bijection[c];
      if (!b.match) mism.push_back(c);
      if (b.from_o.blocks.empty() && b.from_r.blocks.empty() && b.match) continue;
      per.push_back({{"cell", c},
                     {"match", b.match},
                     {"from_O", partition_json(b.from_o)},
                     {"from_R", partition_json(b.from_r)},
                     {"unlinked_sections", b.unlinked_sections}});
    }
    conn["mismatching_cells"] = mism;
    conn["cells"] = per;
  }
  j["connectivity"] = conn;
  if (r.conv) {
    j["convex"] = {{"pieces", r.conv->pieces.size()},
                   {"beta0", r.conv->beta0},
                   {"conformity", {{"pass", r.conformity->pass},
                                   {"samples", r.conformity->samples},
                                   {"mismatches", r.conformity->mismatches}}}};
  }
  j["verdict"] = to_string(r.verdict);
  json t = json::object();
  for (const auto& [k, v] : r.timings_ms) t[k] = v;
  j["timings_ms"] = t;
  return j;
}

template TopologySummary analytic_topology(const Shape<2>&);
template TopologySummary analytic_topology(const Shape<3>&);
template ScenarioReport<2> run_scenario(const SceneData<2>&, const RunOptions&);
template ScenarioReport<3> run_scenario(const SceneData<3>&, const RunOptions&);
template json report_to_json(const ScenarioReport<2>&);
template json report_to_json(const ScenarioReport<3>&);

}  // namespace xsect
