#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "xsect/io.hpp"
#include "xsect/scene.hpp"

namespace xsect {

/// Monte-Carlo sweep over the spacing of a parallel plane family.
/// Family "ball_parallel": Ball(0, radius) cut by planes normal to z.
/// Family "disk_parallel": Disk2D(0, radius) cut by lines normal to y.
struct SweepConfig {
  std::string family = "ball_parallel";
  double radius = 1.0;
  double from = 0.5, to = 3.0;
  int steps = 11;
  int trials = 20;
  std::uint64_t seed = 1;
  double voxel = 0.08;
  /// Trial 0 of every step uses planes at (k + 1/2) * spacing instead of a
  /// random phase; above twice the radius these can miss the shape.
  bool constructed_trial = true;
  bool timings = false;
};

SweepConfig parse_sweep_config(const nlohmann::json& doc);

struct SweepRow {
  double param_value = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double h_over_reach = 0.0;  ///< max over cells with finite h_C and reach_C
  double alpha_c = 0.0;       ///< max alpha_C over cells
  bool c1 = false, c2 = false;
  bool beta_match = false, connectivity_match = false;
  double runtime_ms = 0.0;
};

/// The scene of one trial (exposed for tests).
template <int D>
SceneData<D> sweep_trial_scene(const SweepConfig& cfg, double spacing, int trial, std::uint64_t seed);

std::uint64_t sweep_trial_seed(const SweepConfig& cfg, int step, int trial);

/// Reference implementation, trials in order.
std::vector<SweepRow> run_sweep_serial(const SweepConfig& cfg);
/// Trials spread over an OpenMP pool; rows come back in trial order.
std::vector<SweepRow> run_sweep_parallel(const SweepConfig& cfg);

CsvTable sweep_table(const std::vector<SweepRow>& rows);

}  // namespace xsect
